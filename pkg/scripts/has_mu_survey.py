"""Does K contain the p-th roots of unity?  Residue criterion against a root search.

has_mu_l raises CriterionOracleMismatch if the two disagree, so a clean run
of this script is itself the cross-check.
"""

from llab.local_field import has_mu_l, root_of_minus_p
from llab.presets import PRESETS, preset


def main():
    print(f"{'field':<12} {'p':>2} {'e':>2} {'f':>2} {'mu_p':>5}  Pi^(p-1) = -p")
    for name in PRESETS:
        K = preset(name)
        has = has_mu_l(K, K.p)
        Pi = root_of_minus_p(K)
        check = "" if Pi is None else str(Pi ** (K.p - 1) == K(-K.p))
        print(f"{name:<12} {K.p:>2} {K.e:>2} {K.f:>2} {str(has):>5}  {check}")


if __name__ == "__main__":
    main()
