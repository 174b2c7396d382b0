"""Amplifier transfer curves and clipping statistics.

Prints the input/output characteristic of the embedded reference amplifier
under the hard-knee model and a smooth-knee model, then the probability of
driving it into saturation as a function of the input loading factor.
"""

import argparse

import numpy as np

from ofdmsee import RappParams, clip_probability, find_pa, rapp, soft_limiter


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pa", default="SM2122-44L", help="amplifier model name or row id")
    parser.add_argument("--smoothness", type=float, default=2.0, help="knee sharpness p")
    args = parser.parse_args()

    spec = find_pa(args.pa)
    print(f"{spec.model_name}: p_max_out={spec.p_max_out:.3f} W, "
          f"gain={spec.gain:.1f}, p_max_in={spec.p_max_in:.3e} W")
    b_max = spec.b_max

    print("\ninput amplitude -> output amplitude (hard knee vs smooth knee)")
    amps = np.geomspace(0.05, 4.0, 12) * spec.a_max
    smooth = RappParams(gain=spec.gain, b_sat=b_max, p=args.smoothness)
    for a in amps:
        hard = soft_limiter(a, spec)
        soft = rapp(a, smooth)
        print(f"  a={a:.4e}  hard={hard:.4f}  smooth={soft:.4f}  (ceiling {b_max:.4f})")

    print("\nloading factor -> clipping probability")
    for xi in (0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0):
        print(f"  xi={xi:<4}  Pr[clip]={clip_probability(xi):.6f}")


if __name__ == "__main__":
    main()
