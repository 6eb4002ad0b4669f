"""Trace how partitions change as type information is dialed up.

Plants four blocks glued into a chain, then optimizes across the
information grid and prints one row per grid point: bits for flat and
hierarchical search, the extra compression relative to one module, and
the effective module size.  Run as
``python demos/information_sweep_demo.py``.
"""

from bimapeq import SearchParams, nested_blocks, run_sweep, write_sweep_csv


def main():
    net, truth = nested_blocks(seed=5)
    print(f"network: {net.n_left} + {net.n_right} nodes, {net.n_edges} edges")

    records = run_sweep(net, step=0.25, params=SearchParams(trials=20, seed=3))
    print("info  alpha   bits2l  bitsH   extra2l extraH  effsize depth")
    for r in records:
        print(f"{r.info:4.2f}  {r.alpha:.3f}  {r.bits_two_level:.4f}  "
              f"{r.bits_hierarchical:.4f}  {r.extra_two_level:6.4f}  "
              f"{r.extra_hierarchical:6.4f}  {r.effective_size_hierarchical:5.2f}  "
              f"{r.depth}")

    print()
    print("csv form, as written by the command line sweep:")
    print(write_sweep_csv(records), end="")


if __name__ == "__main__":
    main()
