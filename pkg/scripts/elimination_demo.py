"""Derive the spectral curve from the petal system and compare with the stored transcription."""

import time

from marginal_resolvent.elimination import curve_diff, eliminate_to_eta, eta_to_sextic
from marginal_resolvent.resolvent import moments_from_curve

t0 = time.perf_counter()
res = eliminate_to_eta()
print(f"elimination took {time.perf_counter() - t0:.2f}s")
for var, sizes in res.stages:
    print(f"  eliminated {var}: term counts {sizes}")
print("stripped factors:", ", ".join(f"({f})^{k}" for f, k in res.stripped))
print(f"eta has {len(res.eta.terms)} terms, degree {res.eta.degree('S01')} in S01")

curve = eta_to_sextic(res.eta)
print(f"curve has {len(curve.poly.terms)} terms, degree {curve.degree_W} in W")
diff = curve_diff(curve)
print("matches stored curve" if not diff else "\n".join(diff))

for n, m in enumerate(moments_from_curve(curve, 4)):
    print(f"M_{n} = {m}")
