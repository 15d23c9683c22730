"""Which torus elements diag(a, 1, 1/a) of SO(sl2, Killing) come from SL(2)?

For each prime and each square-class representative a, prints the spinor
norm of the torus element and whether it lies in the image of Ad.
"""

import argparse

from padic_particles.orthogrp import in_spin_image, spinor_norm, torus_element
from padic_particles.padic import PAdic, is_square, square_class_reps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="2,3,5,7,13")
    ap.add_argument("--prec", type=int, default=32)
    args = ap.parse_args()

    print(f"{'p':>3} {'alpha':>6} {'spinor':>7} {'square':>7} {'in image':>9}")
    for p in (int(s) for s in args.primes.split(",")):
        for a in square_class_reps(p):
            x = PAdic.from_rational(p, a, 1, args.prec)
            M = torus_element(x)
            print(f"{p:>3} {a:>6} {spinor_norm(M).representative:>7} {str(is_square(x)):>7} {str(in_spin_image(M)):>9}")


if __name__ == "__main__":
    main()
