"""Transmitter power draw under three amplifier supply models.

Shows consumed power versus loading for the affine model, the n-way
Doherty model (piecewise square-root draw), and the lossless lower
bound, for each built-in transmitter class.
"""

import argparse

import numpy as np

from ofdmsee import BS_PRESETS, doherty_pieces, pc_ideal, pc_linear, pc_nonlinear


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-ways", type=int, default=2, help="Doherty way count")
    parser.add_argument("--pa-gain", type=float, default=316227.77, help="amplifier power gain")
    args = parser.parse_args()

    for name in sorted(BS_PRESETS):
        preset = BS_PRESETS[name]
        print(f"\n{name}: p_max_out={preset.p_max_out} W, p_fix={preset.p_fix} W, "
              f"slope c={preset.c}")
        print("  xi      affine     doherty    lossless   (W)")
        for xi in np.geomspace(0.01, 1.0, 8):
            print(f"  {xi:6.4f}  {pc_linear(xi, preset):9.3f}  "
                  f"{pc_nonlinear(xi, preset, n_ways=args.n_ways):9.3f}  "
                  f"{pc_ideal(xi, preset, args.pa_gain):9.3f}")
        pieces = doherty_pieces(preset, n_ways=args.n_ways)
        knees = ", ".join(f"{lo:.4g}" for lo, _, _, _ in pieces[1:])
        print(f"  doherty transition(s) at xi = {knees or 'none'}")


if __name__ == "__main__":
    main()
