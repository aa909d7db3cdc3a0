"""Regenerate data/zeta_zeros_2000.txt: ordinates of the first 2000 nontrivial zeta zeros."""
import sys

import mpmath

COUNT = 2000


def main(path):
    mpmath.mp.dps = 25
    with open(path, "w") as out:
        out.write("# Imaginary parts t_k of the first %d nontrivial zeros of zeta(1/2 + it)\n" % COUNT)
        out.write("# generated with mpmath.zetazero, 25 significant digits of working precision\n")
        for k in range(1, COUNT + 1):
            out.write(mpmath.nstr(mpmath.zetazero(k).imag, 18) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/zeta_zeros_2000.txt")
