"""The default verification suite: every identity over its size matrix, with
deterministic text and JSON reporting.

The JSON output is byte-identical across runs for a fixed seed (timing is
never serialized), and the report array is sorted by identity id, parameters,
and seeds.  Negative regressions (uncorrected coefficient conventions) are
part of the matrix and expected to report equal=false.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .identities import (
    verify_VI,
    verify_hyperpf_structure,
    verify_rational_identity,
    verify_shuffle_wick,
    verify_vandermonde_average,
)
from .integrals import verify_chen_batch, verify_debruijn
from .report import VerificationReport

DEFAULT_SEED = 42


@dataclass(frozen=True)
class SuiteCase:
    runner: str
    params: tuple  # sorted (key, value) pairs; values are ints/strings/tuples
    expect_equal: bool = True
    caps: tuple = ()
    seed_offset: int = 0

    def param_dict(self) -> dict:
        return dict(self.params)


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    paranoid: bool = False
    jobs: int = 1
    caps: dict = field(default_factory=dict)

    @property
    def points(self) -> int:
        return 10 if self.paranoid else 3


def _case(runner, params, expect_equal=True, seed_offset=0, **caps) -> SuiteCase:
    return SuiteCase(
        runner,
        tuple(sorted(params.items())),
        expect_equal,
        tuple(sorted(caps.items())),
        seed_offset,
    )


def default_cases() -> list[SuiteCase]:
    cases: list[SuiteCase] = []

    for n in (1, 2, 3):
        for variant in ("PFAB", "SDB2", "FHAFF2", "FHAFF1"):
            cases.append(_case("wick", {"variant": variant, "n": n}, size=2 * n, **{"2n": 2 * n}))
    for n in (2, 3, 4, 5):
        cases.append(_case("wick", {"variant": "ODD_EVEN", "n": n}, size=n, n=n))
        cases.append(_case("wick", {"variant": "ANTISHUFFLE", "n": n}, size=n, n=n))
    for k, n in ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2)):
        cases.append(
            _case(
                "wick",
                {"variant": "XIPFASHU", "k": k, "n": n},
                size=2 * k * n,
                **{"2kn": 2 * k * n},
            )
        )
    # Erratum regressions: the uncorrected double-factorial coefficient fails.
    cases.append(
        _case(
            "wick",
            {"variant": "FHAFF1", "n": 2, "coeff": "paper"},
            expect_equal=False,
            size=4,
            **{"2n": 4},
        )
    )
    cases.append(
        _case(
            "rational",
            {"variant": "SCHUR_HYPER", "size": 1, "coeff": "paper"},
            expect_equal=False,
            size=4,
        )
    )

    for m, n in ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2)):
        cases.append(
            _case(
                "structure",
                {"variant": "COMPOSITION", "m": m, "n": n},
                size=2 * m * n,
                **{"2mn": 2 * m * n},
            )
        )
    for m, n in ((1, 1), (1, 2), (1, 3), (2, 2)):
        cases.append(
            _case(
                "structure",
                {"variant": "SUM", "m": m, "n": n},
                size=2 * m * n,
                **{"2mn": 2 * m * n},
            )
        )
    for m, t, n in ((1, 1, 2), (1, 2, 2), (1, 2, 3), (2, 1, 2)):
        cases.append(
            _case(
                "structure",
                {"variant": "MINOR", "m": m, "t": t, "n": n},
                size=2 * m * n,
                **{"2mn": 2 * m * n},
            )
        )
    for m, n in ((1, 2), (1, 3), (2, 2)):
        cases.append(
            _case(
                "structure",
                {"variant": "DET_DECOMP", "m": m, "n": n},
                size=2 * m * n,
                **{"2mn": 2 * m * n},
            )
        )

    rational_matrix = (
        [("SCHUR", n) for n in (1, 2, 3)]
        + [("SCHUR_HYPER", n) for n in (1, 2)]
        + [("SUNDQUIST", m) for m in (1, 2, 3)]
        + [("MEHTA1", n) for n in (1, 2, 3, 4, 5, 6)]
        + [("MEHTA2", n) for n in (2, 4)]
        + [("SUM1", m) for m in (1, 2, 3, 4, 5)]
        + [("HAFSYM", n) for n in (1, 2, 3)]
        + [("WIGNER_RANK1", n) for n in (1, 2, 3)]
        + [("ARQ", m) for m in (1, 2)]
    )
    for variant, size in rational_matrix:
        for offset in (0, 1, 2):
            cases.append(
                _case(
                    "rational",
                    {"variant": variant, "size": size},
                    seed_offset=offset,
                    size=size,
                )
            )

    vi_parts = [(1, 1)]
    for r in (1, 2, 3, 4):
        vi_parts.extend(itertools.permutations((1, 2, 3, 4), r))
    for parts in vi_parts:
        cases.append(_case("vi", {"parts": parts, "N": 8}, size=len(parts), **{"len": len(parts)}))

    for N, n, m in ((2, 2, 1), (3, 2, 1), (3, 3, 1), (2, 2, 2), (3, 2, 2)):
        cases.append(
            _case(
                "vandermonde",
                {"N": N, "n": n, "m": m},
                size=2 * m * n,
                **{"2mn": 2 * m * n, "Nn": N ** n},
            )
        )

    cases.append(_case("chen", {"pairs": 100}, size=8))

    for order in (2, 4, 6):
        cases.append(_case("debruijn", {"variant": "EVEN", "n": order}, size=order, order=order))
        cases.append(
            _case("debruijn", {"variant": "INTERLEAVED", "n": order}, size=order, order=order)
        )
        cases.append(
            _case("debruijn", {"variant": "NEW_PAIRING", "n": order}, size=order, order=order)
        )
        cases.append(
            _case("debruijn", {"variant": "PERM_PRODUCT", "n": order}, size=order, order=order)
        )
        cases.append(
            _case("debruijn", {"variant": "PERM_INTERLEAVED", "n": order}, size=order, order=order)
        )
    for order in (3, 5):
        cases.append(_case("debruijn", {"variant": "ODD", "n": order}, size=order, order=order))
    for k, n in ((1, 2), (1, 3), (2, 1), (2, 2)):
        for variant in ("GENERAL_DET", "GENERAL_PERM"):
            cases.append(
                _case(
                    "debruijn",
                    {"variant": variant, "k": k, "n": n},
                    size=2 * k * n,
                    **{"2kn": 2 * k * n},
                )
            )
    return cases


def run_case(case: SuiteCase, config: SuiteConfig) -> VerificationReport:
    p = case.param_dict()
    seed = config.seed + case.seed_offset
    if case.runner == "wick":
        return verify_shuffle_wick(
            p["variant"], p["n"], k=p.get("k"), coeff=p.get("coeff", "corrected")
        )
    if case.runner == "structure":
        return verify_hyperpf_structure(
            p["variant"], p["m"], p["n"], t=p.get("t"), seed=seed
        )
    if case.runner == "rational":
        return verify_rational_identity(
            p["variant"],
            p["size"],
            seed=seed,
            points=config.points,
            coeff=p.get("coeff", "corrected"),
        )
    if case.runner == "vi":
        return verify_VI(p["parts"], N=p["N"], seed=seed, points=config.points)
    if case.runner == "vandermonde":
        return verify_vandermonde_average(p["N"], p["n"], p["m"], seed=seed)
    if case.runner == "chen":
        return verify_chen_batch(seed, pairs=p["pairs"])
    if case.runner == "debruijn":
        return verify_debruijn(
            p["variant"],
            n=p.get("n"),
            k=p.get("k"),
            seed=seed,
            coeff=p.get("coeff", "corrected"),
        )
    raise ValueError(f"unknown runner: {case.runner}")


def _within_caps(case: SuiteCase, overrides: dict) -> bool:
    caps = dict(case.caps)
    for key, limit in overrides.items():
        if key in caps and caps[key] > limit:
            return False
    return True


def _pool_entry(args):
    case, config = args
    return run_case(case, config)


def run_suite(config: SuiteConfig) -> tuple[list[tuple[SuiteCase, VerificationReport]], bool]:
    """Run the (possibly capped) default matrix; results sorted canonically."""
    cases = [c for c in default_cases() if _within_caps(c, config.caps)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_pool_entry, [(c, config) for c in cases]))
    else:
        reports = [run_case(c, config) for c in cases]
    results = list(zip(cases, reports))
    results.sort(key=lambda cr: _sort_key(cr[1]))
    ok = all(r.equal == c.expect_equal for c, r in results)
    return results, ok


def _sort_key(report: VerificationReport):
    return (
        report.identity,
        json.dumps(report.params, sort_keys=True, default=str),
        list(report.seeds),
    )


def suite_json_bytes(results) -> bytes:
    entries = []
    for case, report in results:
        entry = report.to_json_dict(include_timing=False)
        entry["expect_equal"] = case.expect_equal
        entries.append(entry)
    return (json.dumps(entries, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def suite_text(results, ok: bool) -> str:
    lines = []
    width = max(len(r.identity) for _, r in results) if results else 10
    for case, report in results:
        status = "ok" if report.equal == case.expect_equal else "FAIL"
        expected = "" if case.expect_equal else " (expected NOT equal)"
        ps = ",".join(f"{k}={v}" for k, v in sorted(report.params.items(), key=lambda kv: kv[0]))
        lines.append(
            f"[{status:>4}] {report.identity:<{width}} {ps:<40} "
            f"equal={str(report.equal).lower():<5} {report.elapsed_ms:>6} ms"
        )
    passed = sum(1 for c, r in results if r.equal == c.expect_equal)
    lines.append(f"{passed}/{len(results)} checks as expected: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines)
