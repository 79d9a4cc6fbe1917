"""Two torus bundles with the same Alexander polynomial, told apart by finer invariants."""

from afinv.torusbundle import alexander_polynomial, bundle_invariants, conjugacy_test

A = [[5, 2], [2, 1]]
B = [[5, 1], [4, 1]]

for name, m in (("A", A), ("B", B)):
    r = bundle_invariants(m)
    print(f"{name} = {m}")
    print(f"  alexander  {alexander_polynomial(m)}")
    print(f"  field      Q(sqrt({r.d})), conductor {r.conductor}")
    print(f"  trace form Delta={r.delta} Sigma={r.sigma}")
    print(f"  cf period  {list(r.cf_period)}")
    print(f"  order      {', '.join(r.order_basis)}")

v = conjugacy_test(A, B)
print(f"conjugacy: {v.verdict} (exit {v.exit_code}), periods {v.periods}")
