"""Exact computer-algebra kernel: shuffle algebras, Grassmann calculus,
(hyper)Pfaffian and (hyper)hafnian expansions, and a verification suite that
machine-checks a catalogue of classical identities with exact arithmetic."""

from .core import (
    QQ,
    Rational,
    RationalField,
    Ring,
    SeededSampler,
    even_double_factorial,
    mix_seed,
    normalize,
    odd_double_factorial,
    sample_positive_distinct,
)
from .freealg import (
    ANTISHUFFLE_RING,
    SHUFFLE_RING,
    AntishuffleRing,
    FreePoly,
    LetterRegistry,
    ShuffleRing,
    antipode_convolution,
    antishuffle,
    concat,
    mirror,
    q_shuffle,
    shuffle,
)
from .integrals import (
    MonomialFamily,
    chen_form,
    iterated_integral_oracle,
    r_value,
    verify_chen,
    verify_chen_batch,
    verify_debruijn,
)
from .identities import (
    verify_VI,
    verify_hyperpf_structure,
    verify_rational_identity,
    verify_shuffle_wick,
    verify_vandermonde_average,
)
from .multilinear import (
    GrassmannElement,
    SquareZeroElement,
    berezin_extract,
    exp_even,
    grassmann_generators,
    ordered_product,
    sz_generators,
    wedge_mul,
)
from .report import VerificationReport
from .tensors import (
    AltTensor,
    DenseMatrix,
    SymTensor,
    blocked_count,
    determinant,
    enumerate_blocked,
    grassmann_pf_oracle,
    hafnian,
    hyperhafnian,
    hyperpfaffian,
    permanent,
    pfaffian,
    signed_permutations,
    sz_hf_oracle,
    tensor_from_json,
    tensor_to_json,
)

__version__ = "0.1.0"
