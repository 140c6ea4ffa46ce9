#!/usr/bin/env python3
"""Write data/segments.manifest and data/smoke.manifest."""
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent / "data"


def run(tag, den, lo, hi, target):
    return [(tag, j, den, j + 1, den, target) for j in range(lo, hi + 1)]


middle = run("B2-case", 1000, 5, 19, None) + run("B2-case", 100, 2, 49, None)
case6 = (run("B2-case6", 1000, 5, 19, "-1e-5") + run("B2-case6", 100, 2, 24, "-1e-5")
         + run("B2-case6", 1000, 250, 424, "-1e-5") + run("B2-case6", 10000, 4250, 4724, "-1e-5")
         + run("B2-case6", 50000, 23625, 24299, "-1e-5") + run("B2-case6", 100000, 48600, 48799, "-1e-5")
         + run("B2-case6", 200000, 97600, 98749, "-1e-5") + run("B2-case6", 400000, 197500, 197999, "-1e-5"))

rows = run("B2-case1", 10000, 10, 49, "-1e-3") + run("B2-case2", 1000, 1, 4, "-1e-2")
for k in (3, 4, 5):
    rows += [(f"B2-case{k}", a, b, c, d, "-1e-3") for (_, a, b, c, d, _) in middle]
rows += case6
rows += run("B3-local", 400000, 198000, 199999, "1e-6")

fmt = lambda r: " ".join(str(x) for x in r)
header = "# tag eta1_num eta1_den eta2_num eta2_den target\n"
(root / "segments.manifest").write_text(header + "\n".join(map(fmt, rows)) + "\n")
quota = {"B2-case1": 5, "B2-case2": 2, "B2-case3": 5, "B2-case4": 5, "B2-case5": 5,
         "B2-case6": 20, "B3-local": 8}
smoke = []
for tag, k in quota.items():
    group = [r for r in rows if r[0] == tag]
    smoke += [group[round(i * (len(group) - 1) / (k - 1))] for i in range(k)]
(root / "smoke.manifest").write_text(header + "\n".join(map(fmt, smoke)) + "\n")
print(len(rows), len(smoke))
