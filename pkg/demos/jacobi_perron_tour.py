"""Jacobi-Perron expansions of Perron-Frobenius directions, their convergents and factorizations."""

from afinv.jacobiperron import jp_convergents, jp_expand, jp_factorize, period_witness, ratio_vector
from afinv.pfdata import perron_data

TRIBONACCI = [[1, 1, 1], [1, 0, 0], [0, 1, 0]]

for m in ([[5, 2], [2, 1]], [[5, 1], [4, 1]], TRIBONACCI):
    pd = perron_data(m)
    e = jp_expand(ratio_vector(pd.eigenvector))
    print(f"{m}: lambda ~ {float(pd.eigenvalue.approx()):.6f}")
    print(f"  preperiod {list(e.preperiod)} period {list(e.period)}")
    for k in range(4):
        print(f"  convergent {k}: {jp_convergents(e, k)}")
    w = period_witness(m, 100)
    print(f"  period product {w.product.rows}, exponents {w.exponents}")

print("factor [[5,2],[2,1]] ->", jp_factorize([[5, 2], [2, 1]]))
