"""The exact small-n verification suite, including the one identity that the
stated form gets wrong.

Pushing the uniform measure on one-factor posets through their covers gives
the exactly uniform measure on covers and on walk pairs.  The area identity,
the increment bound on windows, and the first-return law all hold verbatim.
The element-time/uniform-time symmetrization, however, is NOT an exact
equality at finite n: the element side has no mass at gap zero while a
uniform time lands on the final zero with probability 1/n.  The exact
bookkeeping that does hold pairs (-,+) steps at gap m with (+,-) steps at
gap m+2 under time reversal.
"""

from posetwalks import oracle

for n in range(1, 6):
    print(oracle.verify_uniform_cover_measure(n))

print()
for n in (6, 9):
    print(oracle.verify_area_identity(n))
    print(oracle.verify_err_inequality(n))

print()
print(oracle.verify_first_return(8))
print(oracle.verify_factor_dominance(5))

print("\nsymmetrization, exact histograms over the full walk space:")
for n in (2, 4, 6):
    rep = oracle.verify_symmetrization(n)
    print(f"  n={n}: element side {rep.details['by_element']}")
    print(f"       time side    {rep.details['by_time']}")
    print(f"       literal equality: {rep.passed}; "
          f"involution pairing identity: {rep.details['involution_identity_holds']}")
