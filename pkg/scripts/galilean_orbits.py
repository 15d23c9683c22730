"""Walk a few points of a Galilean mass orbit M = a and watch the invariants.

Starts at the base point (0, a/4 tau), transports it to random chart points
and applies random rotation-boosts, printing M and the chart coordinate.
"""

import argparse
from fractions import Fraction

from padic_particles import galilean as gal
from padic_particles import sampling
from padic_particles.padic import PAdic
from padic_particles.quadform import parse_diag


def short(x, digits=4):
    # leading p-adic digits only; the full balanced fraction is unreadable
    if x.is_zero():
        return "0"
    return f"{x.p}^{x.val}*{x.unit % x.p ** digits}"


def show(V0, tau, chi):
    m = gal.invariant_M(V0, tau, chi)
    xi = ", ".join(short(c) for c in chi.xi)
    return f"M = {m.to_fraction()!s:>8}   xi = ({xi})"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--diag", default="1,1,1")
    ap.add_argument("--tau", default="1/5")
    ap.add_argument("--a", default="2")
    ap.add_argument("--steps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    prec = 32
    V0 = parse_diag(args.p, args.diag, prec)
    tau = PAdic.from_rational(args.p, Fraction(args.tau), 1, prec)
    a = PAdic.from_rational(args.p, Fraction(args.a), 1, prec)
    rng = sampling.rng_for(args.seed, "orbits")

    chi = gal.base_point(V0, tau, a)
    print("base      ", show(V0, tau, chi))
    for i in range(args.steps):
        g = sampling.rotation_boost(rng, V0, prec)
        chi = gal.affine_act_gal(V0, tau, g, chi)
        print(f"step {i + 1:<5}", show(V0, tau, chi))
    fixed = gal.stabilizer_check(V0, tau, a, (sampling.vector(rng, args.p, V0.dim, prec), sampling.rotation(rng, V0, prec)))
    print("random boost fixes the base point:", fixed)


if __name__ == "__main__":
    main()
