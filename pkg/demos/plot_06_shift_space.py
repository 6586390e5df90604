"""
Asymptotic points, chaotic sets: the shift example
==================================================

On the sequences with at most one zero every pair of points is asymptotic.
The induced map on finite sets still has a Li-Yorke pair: M = {1^inf}
against the sequences with zeros at n_i + 1, where n_{i+1} = n_i + i + 2.
"""

from hyperchaos.shift_space import BinarySeq, build_example_N, example_M, hausdorff_seq, shift_set, verify_example

print("N_4 =", build_example_N(4))
print(BinarySeq.parse("1^2 0 1^inf"), "is in A:", BinarySeq.parse("1^2 0 1^inf").in_A)

M, N = example_M(), build_example_N(6)
series = []
for t in range(20):
    series.append(hausdorff_seq(M, N))
    M, N = shift_set(M), shift_set(N)
print("d_H series:", " ".join(str(d) for d in series))

rep = verify_example(6, 19)
print("closed form holds:", rep.closed_form_ok, "| census pairs asymptotic:", rep.census_asymptotic,
      "| dips:", [str(d) for d in rep.dips], "| passed:", rep.passed)
