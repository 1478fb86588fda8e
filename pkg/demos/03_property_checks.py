"""Property-based verification: which axioms hold for which means?

The verify module probes means with seeded random vectors and reports,
per property, either "holds at tolerance" or a concrete witness vector.
Two deliberately pathological means show what failure looks like:

* piecewise_h is a premean on [3, 4] that is NOT repetition invariant:
  it maps (3,4) to 3.5 but (3,3,4,4) to 25/7.
* cube_over_square (sum of cubes over sum of squares) has a negligible
  element: appending 0 never changes the value.
"""

import meanstream as ms

print("full suite (seeded):")
for report in ms.run_suite(seed=1, trials=200):
    status = "holds" if report.holds else "VIOLATED"
    line = f"  {report.property:<26} {report.subject:<24} {status}"
    if not report.holds and report.witness is not None:
        line += f"  witness={report.witness}"
    print(line)

print("\nthe repetition-invariance counterexample, up close:")
d = ms.piecewise_counterexample()
print(f"  piecewise_h(3, 4)       = {ms.evaluate_stream(d, [3, 4])}")
print(f"  piecewise_h(3, 3, 4, 4) = {ms.evaluate_stream(d, [3, 3, 4, 4])}"
      f"  (= 25/7 = {25 / 7})")

print("\nnegligible-element detection:")
found = ms.detect_negligible_element(ms.cube_over_square(),
                                     [0.0, 1.0, -1.0], interval=(-10.0, 10.0))
print(f"  cube_over_square: {found.detail}")
none = ms.detect_negligible_element(ms.bajraktarevic(ms.pair_power(2.0, 1.0)),
                                    [0.5, 1.0, 2.0])
print(f"  bajraktarevic(x^2, x): {none.detail}")
