"""The four elementary generators, the g-map table and the freeness check."""

from bondskein.bonded import (
    FREENESS_DETERMINANT,
    GeneratorKind,
    freeness_determinant,
    g_table,
    generator_fixture,
    rigid_invariant,
)
from bondskein.bpd import serialize_bpd

for kind in GeneratorKind:
    d = generator_fixture(kind.value)
    print(f"--- {kind.value}")
    print(serialize_bpd(d), end="")
    print("rigid invariant:", rigid_invariant(d))

print("--- ThetaBarStar (crossing switched)")
print(str(rigid_invariant(generator_fixture("ThetaBarStar"))))

print("\ng-map values (rows: maps, columns: generators)")
table = g_table()
kinds = [k.value for k in GeneratorKind]
print("map".ljust(8) + "".join(k.ljust(36) for k in kinds))
for which, row in table.items():
    print(which.ljust(8) + "".join(str(row[k]).ljust(36) for k in kinds))

det = freeness_determinant()
print("\ndeterminant:", det)
print("matches the factored form:", det == FREENESS_DETERMINANT)
print("value at l=2, m=1:", det.evaluate(2, 1))
