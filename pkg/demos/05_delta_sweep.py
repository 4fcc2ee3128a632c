"""Relative advantage of the physics model across a (L, N) grid.

Runs a paired sweep (both models see identical scenarios) and prints the
empirical relative difference next to its closed form

    delta = (1 + (sqrt(pi*N) + 1)/N)^L - 1.

The advantage grows with the number of surfaces and shrinks with the
number of elements per surface. The same table is written as CSV; the
companion figplot package renders such files as a log-log chart:

    multiris delta-sweep --L-list 1,2,4,8 --NI-list 16,32,64,128 \
        --trials 10000 --seed 20260818 --out sweep.csv
    figplot sweep.csv -o sweep.svg
"""
import pathlib

from multiris.montecarlo import sweep

ROWS = sweep([1, 2, 4, 8], [16, 64, 128], trials=1500, master_seed=20260818)

print(f"{'L':>2} {'N':>4}  {'delta empirical':>15}  {'delta theory':>13}")
for row in ROWS:
    print(
        f"{row.L:>2} {row.N_I:>4}  {row.delta_empirical:15.4f}"
        f"  {row.delta_theory:13.4f}"
    )

out = pathlib.Path(__file__).with_name("delta_sweep.csv")
lines = ["L,N_I,trials,mean_physics,se_physics,theory_physics,"
         "gain_conventional,delta_empirical,delta_theory"]
for r in ROWS:
    lines.append(
        f"{r.L},{r.N_I},{r.trials},{r.mean_physics:.16e},{r.se_physics:.16e},"
        f"{r.theory_physics:.16e},{r.gain_conventional:.16e},"
        f"{r.delta_empirical:.16e},{r.delta_theory:.16e}"
    )
out.write_text("\n".join(lines) + "\n", encoding="utf-8")
print(f"\nwrote {out.name}; render it with: figplot {out.name} -o delta_sweep.svg")
