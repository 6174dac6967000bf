"""The conic bundle t0^2 + t1^2 = (x - x(P))(x - x(3P)) t2^2 over y^2 = x(x+2)(x-3).

Every even multiple of P = (-1, 2) has a rational point on its fibre. The
character test for kronecker:-4, ramified at O, is printed alongside for
contrast; it keeps only n = +-2.
"""

from ellipdiv import (EdsSequence, brauer_vanishing_test, conic_fiber_check,
                      find_star2_witness, parse_character, parse_curve, parse_point)


def main():
    seq = EdsSequence(parse_curve("0,-1,0,-6,0"), parse_point("-1,2"))
    chi = parse_character("kronecker:-4")
    print("witness for kronecker:-4:", find_star2_witness(seq, chi, alpha_max=1000))
    print(" n  fibre  local test")
    for n in range(2, 21, 2):
        fibre = conic_fiber_check(seq, n)
        local = brauer_vanishing_test(seq, chi, n).value
        print(f"{n:2d}  {str(fibre):5s}  {local}")


if __name__ == "__main__":
    main()
