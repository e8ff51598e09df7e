# The contact CR-product criterion
#
# fix-cr5 is the y2 = 0 slice of the standard contact chart on 5-space: a
# proper contact CR-submanifold that is a genuine product of its leaves.
# The leaf-geodesy surrogates pass for both connections, and the product
# criterion A_{phi U}X = -eta(X)U holds together with its supporting
# pairings, so the equivalence is visible as co-occurrence.  On the
# paper-r7 fixture the criterion fails at a Reeb-direction witness with
# the exact magnitude |e3|.

from contactstat.crchecks import check_cr_product
from contactstat.fixtures import fixture_doc
from contactstat.sampling import sample_box
from contactstat.specfile import from_doc

spec = from_doc(fixture_doc("fix-cr5"))
cr = spec.cr_structure()
rep = check_cr_product(cr, sample_box(4, count=32))
print("fix-cr5 (a genuine product):")
print(rep.table())
print()

spec7 = from_doc(fixture_doc("paper-r7-euclidean"))
rep7 = check_cr_product(spec7.cr_structure(), sample_box(5, count=32))
print("paper-r7-euclidean (not a product; criterion fails honestly):")
for name in ("product-criterion", "dperp-leaf", "d-leaf"):
    rec = rep7.record(name)
    print(f"  {rec.name:20s} {rec.status:4s} residual={rec.residual:.6f} "
          f"witness={rec.witness}")
