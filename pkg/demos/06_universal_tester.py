"""The universal tester and how its knobs were calibrated.

The tester samples a disk-frequency vector and accepts when it is within
lambda (l1) of some vector realizable by the property's members.  The
threshold, disk parameters and sample count are existence-only in theory;
here they are explicit, found by the grid search below and shipped as
constants.
"""

from hsftest import PROPERTIES, QuerySession, build_reference_set, calibrated_config, universal_test
from hsftest.tester import TesterConfig, far_instance, member_instance

N, EPS = 8, 0.25

for name in ("edgeless", "forest", "triangle-free"):
    prop = PROPERTIES[name]
    cfg = calibrated_config(name, EPS, seed=1)
    ref = build_reference_set(prop, N, cfg.d, cfg.t)
    member = member_instance(name, N, seed=2)
    far = far_instance(name, N, EPS, seed=2)
    vm = universal_test(QuerySession(member), ref, cfg)
    vf = universal_test(QuerySession(far), ref, cfg)
    print(f"{name:14s} ref vectors: {len(ref.vectors):4d}  "
          f"member -> {vm.verdict} (l1 {vm.distance:.3f})  "
          f"far -> {vf.verdict} (l1 {vf.distance:.3f})")

# the calibration procedure: sweep sample counts, look at the separation
# between member and far distances, then place lambda in the gap
print("\ngrid search sketch for 'forest':")
prop = PROPERTIES["forest"]
ref = build_reference_set(prop, N, 2, 1)
for samples in (32, 64, 128):
    mem, far = [], []
    for i in range(60):
        cfg = TesterConfig(EPS, 1.0, 2, 1, samples, seed=500 + i)
        mem.append(universal_test(QuerySession(member_instance("forest", N, i)), ref, cfg).distance)
        far.append(universal_test(QuerySession(far_instance("forest", N, EPS, i)), ref, cfg).distance)
    mem.sort()
    far.sort()
    print(f"  samples={samples:4d}: member q90 = {mem[54]:.3f}, far min = {far[0]:.3f}"
          f"  -> any lambda in between separates")
print("shipped: lambda = 0.42 at (d,t) = (2,1), 64 samples")
