#!/usr/bin/env python3
"""Show the double-factorial normalization mismatch on the smallest case.

The unsigned permutation sum over S_4 equals 1/3 of the shuffle hafnian of
the pair tensor, not 1/8: the correct coefficient is the matching count
(2n-1)!!, not (2n)!!.
"""
from spfk.identities import verify_shuffle_wick


def main() -> int:
    for coeff in ("corrected", "paper"):
        report = verify_shuffle_wick("FHAFF1", 2, coeff=coeff)
        tag = report.conventions["double_factorial"]
        print(f"coefficient 1/{tag}: equal={report.equal}")
        if not report.equal:
            lhs, rhs = report.counterexample
            print(f"  lhs ({report.lhs_terms} terms): {lhs[:120]}...")
            print(f"  rhs ({report.rhs_terms} terms): {rhs[:120]}...")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
