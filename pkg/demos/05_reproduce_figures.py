"""Reproduce the three figure datasets at desk scale.

Writes fig1.csv / fig2.csv / fig3.csv under ./demo_out, each fully
determined by the master seed.  Scale the n_list / trials up to match
the published settings (the defaults in cascadelab.experiment) when you
have a few minutes to spare; this demo keeps sizes small so it finishes
in well under a minute.
"""

from pathlib import Path

import cascadelab as cl

OUT = Path("demo_out")
SEED = 2024

fig1 = cl.ExperimentConfig(
    experiment="fig1", models=("er", "pa"), n_list=(2_000,), d=10,
    trials=30, master_seed=SEED)
csv1 = cl.run_fig1(fig1, out_dir=OUT)
print(f"fig1.csv: {len(csv1.splitlines()) - 1} rows "
      f"(injury vs max infection, attack sizes 1..5 ln n)")

fig2 = cl.ExperimentConfig(
    experiment="fig2", models=("er", "pa", "security"),
    n_list=(100, 300, 1_000, 3_000), d=10, a=1.5, trials=30,
    master_seed=SEED)
csv2 = cl.run_fig2(fig2, out_dir=OUT)
print("fig2.csv: largest cascade among random-threshold attacks of size ln n")
for line in csv2.strip().splitlines()[1:]:
    print("   ", line)

fig3 = cl.ExperimentConfig(
    experiment="fig3", models=("er", "pa", "security"),
    n_list=(1_000, 3_000, 10_000), d=5, a=1.5, epsilon=0.1,
    master_seed=SEED)
csv3 = cl.run_fig3(fig3, out_dir=OUT)
print("fig3.csv: smallest uniform threshold containing a ln n attack at 10%")
for line in csv3.strip().splitlines()[1:]:
    print("   ", line)

print(f"\nwrote {OUT}/fig1.csv, fig2.csv, fig3.csv (+ manifests); "
      "rerunning resumes completed cells")
