"""Orbit census and reduction chain for a diagonal form over Q_p.

    python3 scripts/particle_census.py --p 7 --diag=1,-1,1,-1,3
"""

import argparse

from padic_particles.poincare import reduction_chain, orbit_census
from padic_particles.quadform import parse_diag


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--diag", default="1,-1,1,-1,3")
    ap.add_argument("--prec", type=int, default=32)
    args = ap.parse_args()

    V = parse_diag(args.p, args.diag, args.prec)
    census = orbit_census(V)
    f = census["form"]
    print(f"V = <{args.diag}> over Q_{args.p}: dim {f['dim']}, disc {f['disc_class']}, hasse {f['hasse']}")
    print()
    print("massive orbits (one row per mass square class)")
    print(f"  {'mass':>6} {'dim':>4} {'disc':>5} {'hasse':>6} {'witt':>5}")
    for row in census["massive"]:
        lg = row["little_group"]
        print(f"  {row['mass_class']:>6} {lg['dim']:>4} {lg['disc_class']:>5} {lg['hasse']:>6} {lg['witt_index']:>5}")
    lg = census["massless"]["little_group"]
    print(f"massless: Poincare group of a dim-{lg['dim']} space, disc {lg['disc_class']}, witt {lg['witt_index']}")
    print("trivial: the whole group")
    print()
    ch = reduction_chain(V)
    print("reduction chain dims:", " -> ".join(str(d) for d in ch.dims()), f"({ch.terminal})")


if __name__ == "__main__":
    main()
