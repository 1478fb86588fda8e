"""How much state does a mean need?  An empirical Myhill-style probe.

Two input words are equivalent when the mean agrees on them and on their
common extensions.  The number of equivalence classes over words of length
n measures how much the mean must remember.  A mean with a k-dimensional
accumulator can only distinguish as many classes as it has reachable
states; the median, which has no finite-dimensional accumulator, shows
strictly faster class growth.
"""

import meanstream as ms

ALPHABET = [0.0, 1.0, 2.0]

print(f"alphabet {ALPHABET}, words up to length 8\n")

for descriptor in (ms.quasi_arithmetic("identity"), ms.median_mean("lower")):
    profile = ms.enumerate_classes(descriptor, ALPHABET, 8)
    growth = ms.growth_report(profile)
    print(f"{descriptor.name}  (type: {descriptor.type_label})")
    print(f"  classes by length: {profile.counts}")
    print(f"  2n+1 reference:    {[2 * n + 1 for n in range(1, 9)]}")
    print(f"  growth: {growth['classification']}\n")

# The class count can never exceed the number of reachable accumulator
# states -- the state is a complete summary of the word.
d = ms.gini(2.0, 1.0)
alphabet = [1.0, 2.0, 3.0]
profile = ms.enumerate_classes(d, alphabet, 6)
states = ms.state_counts(d, alphabet, 6)
print(f"{d.name} on {alphabet}:")
print(f"  equivalence classes: {profile.counts}")
print(f"  reachable states:    {states}")
