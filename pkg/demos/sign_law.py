"""Fit the real sign data of two pairs and check the law far beyond the fit."""

from fractions import Fraction

from ellipdiv import (EdsSequence, equidistribution_stats, fit_sign_data, parse_curve,
                      parse_point, verify_sign_law)
from ellipdiv.numtheory import primes_upto

PAIRS = {
    "y^2 + y = x^3 - x, P = (0,0)": ("0,0,1,-1,0", "0,0"),
    "y^2 + y = x^3 - x, P = (1,0)": ("0,0,1,-1,0", "1,0"),
    "y^2 = x^3 - x^2 - 6x, P = (-1,2)": ("0,-1,0,-6,0", "-1,2"),
}


def main():
    for label, (c, p) in PAIRS.items():
        seq = EdsSequence(parse_curve(c), parse_point(p))
        sd = fit_sign_data(seq, window=50)
        bad = verify_sign_law(seq, sd, 500)
        print(label)
        print(f"  branch={sd.component_branch} sigma={sd.sigma} beta={float(sd.beta):.12f}")
        print("  law holds for 2 <= n <= 500" if bad is None else f"  law fails at n={bad}")

    seq = EdsSequence(parse_curve("0,0,1,-1,0"), parse_point("0,0"))
    sd = fit_sign_data(seq)
    x = 10**5
    count, _ = equidistribution_stats(sd, x, 1, 1, 0, Fraction(1, 2))
    print(f"primes l <= {x} with {{l beta / 2}} < 1/2: {count / len(primes_upto(x)):.4f}")


if __name__ == "__main__":
    main()
