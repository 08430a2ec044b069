"""Walk through a handful of Seifert fibered spaces: invariants, verdict, witness."""

from su2abelian.quaternion import relator_residual
from su2abelian.seifert import (
    euler_number,
    geometry,
    h1,
    is_su2_abelian,
    normalize,
    orbifold_euler_char,
    parse_sfs,
    pi1_presentation,
)

examples = [
    "sfs(S2; 2/1, 4/1, 4/-3)",  # Euclidean, base orbifold (2,4,4)
    "sfs(S2; 3/1, 3/1, 3/1)",  # Nil, |H1| = 27 is odd
    "sfs(S2; 3/1, 3/1, 3/-2)",  # infinite H1
    "sfs(S2; 2/1, 3/1, 7/-5)",  # SL2R-tilde
    "sfs(RP2; 3/1)",  # a lens space
    "sfs(RP2; 5/2)",  # a prism manifold
    "sfs(T2; 1/3)",  # circle bundle, odd Euler number
    "sfs(N2)",
]

for text in examples:
    s = parse_sfs(text)
    print(text)
    print("  normalized :", normalize(s))
    print("  H1         :", h1(s))
    print("  e, chi     :", euler_number(s), orbifold_euler_char(s))
    print("  geometry   :", geometry(s).value)
    v = is_su2_abelian(s)
    if v.abelian:
        print("  verdict    : abelian,", v.certificate.value)
    else:
        print("  verdict    : non-abelian, residual %.2e" % v.residual)
        for g, q in v.witness.as_dict().items():
            print("    %-3s ->" % g, " ".join("% .6f" % x for x in q))
    print()

# the witness is checked against the presentation, not against the construction
s = parse_sfs("sfs(S2; 1/1, 2/1, 1/-2, 3/1, 5/2)")
pres = pi1_presentation(s)
print(pres)
print("residual of lifted witness:", relator_residual(pres, is_su2_abelian(s).witness))
