# The full check suite, as the command line runs it
#
# Equivalent shell command:  discrete-cs verify --spec hydrogen1d

import numpy as np

import discrete_cs as dcs

for spec in (dcs.harmonic(), dcs.hydrogen1d(), dcs.custom_table(np.arange(300.0) ** 1.5)):
    report = dcs.run_verification(spec)
    print(spec.label)
    for c in report.checks:
        print(f"   {c.status:8s}{c.name:26s} residual={c.residual:.3g}")
    print("   exit code:", report.exit_code)
