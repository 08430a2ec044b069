"""Sol torus bundles and the binary quadratic forms behind SL(2,Z) conjugacy."""

from su2abelian.forms import (
    BinaryQuadraticForm,
    class_number,
    conjugate_gl2,
    conjugate_sl2,
    form_cycles,
    form_of_matrix,
    reduce_form_cycle,
    sl2_trace_classes,
    transpose,
)
from su2abelian.sol import GluingMatrix, Monodromy, image_closure, nun_q8_rep, sol_is_su2_abelian, torus_bundle_reps

# which hyperbolic monodromies give SU(2)-abelian bundles
for m in [((-3, -1), (1, 0)), ((-3, 1), (2, -1)), ((-3, 4), (2, -3)), ((2, 1), (1, 1)), ((0, 1), (-1, -6))]:
    phi = Monodromy.from_matrix(m)
    reps = torus_bundle_reps(phi)
    print(m, "trace", phi.trace, "abelian" if sol_is_su2_abelian(phi) else "non-abelian",
          [(round(r.thetas.theta1, 4), round(r.thetas.theta2, 4)) for r in reps])

# the twisted I-bundle unions all surject onto Q8
rep = nun_q8_rep(GluingMatrix(0, 1, 1, 0))
print("Q8 image size:", len(image_closure(rep.images)))

# class numbers and reduced cycles
for D in (5, 8, 12, 32):
    print("D =", D, "h =", class_number(D))
    for cyc in form_cycles(D):
        print("   ", " -> ".join(str(f) for f in cyc))

A4 = ((-3, 1), (2, -1))
print("form of A-4:", form_of_matrix(A4))
print("trace -4 classes:", sl2_trace_classes(-4))
print("A-4 ~ A-4^T in SL2:", conjugate_sl2(A4, transpose(A4)), " in GL2:", conjugate_gl2(A4, transpose(A4)))
# each of A-4 and its transpose lands in exactly one of the two classes
for M in (A4, transpose(A4)):
    print(M, "->", [conjugate_sl2(M, R) for R in sl2_trace_classes(-4)])
print("cycle of (1,2,-2):", [str(f) for f in reduce_form_cycle(BinaryQuadraticForm(1, 2, -2))])
