"""
Scanning every curve
====================

Stabilizer orders over all (A, B) in F_13, extended per curve until E[N]
and the relevant roots of unity are rational.
"""

from gamma0pic.commands import ScanConfig, cmd_lambda_order, cmd_scan

for N in (2, 3):
    rep = cmd_scan(ScanConfig(p=13, k=1, N=N, geometric=True))
    print(f"level {N}: {rep['total_curves']} curves, {rep['total_pairs']} pairs, histogram {rep['stabilizer_histogram']}")
    for rec in rep["exceptional_pairs"][:3]:
        print("   ", rec["A"], rec["B"], "over degree", rec["field_degree"], "witness", rec["witness"])
    lam = cmd_lambda_order(N, 13)
    print("    lambda has order", lam["order"])
