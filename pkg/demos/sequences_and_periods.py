"""Exact terms, periods and witnesses for y^2 + y = x^3 - x with P = (0, 0)."""

from ellipdiv import (EdsSequence, enumerate_characters, find_star2_witness,
                      minimal_period_mod, parse_character, parse_curve, parse_point)


def main():
    seq = EdsSequence(parse_curve("0,0,1,-1,0"), parse_point("0,0"))
    print("beta_0..beta_18:", seq.values(18))
    for N in (4, 7, 28):
        cert = minimal_period_mod(seq, N)
        print(f"period mod {N}: {cert.minimal_period} (divides {cert.divisor_bound})")

    w = find_star2_witness(seq, parse_character("kronecker:-4"))
    print(f"kronecker:-4 witness: alpha={w.alpha} branch={w.branch}")
    for chi in enumerate_characters(7, "even"):
        if chi.is_principal:
            continue
        w = find_star2_witness(seq, chi)
        print(f"{chi.literal()} (order {chi.order}) witness: alpha={w.alpha}")


if __name__ == "__main__":
    main()
