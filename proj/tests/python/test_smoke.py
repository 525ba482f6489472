"""Smoke tests for the python module; run under ctest with PYTHONPATH set."""
import math
import sys

import lllmt


def check(label, ok):
    if not ok:
        print(f"FAIL {label}")
        sys.exit(1)
    print(f"ok   {label}")


def main():
    # lambda(alpha) shape
    check("lambda(1) == 0", lllmt.lambda_bound(1.0) == 0.0)
    check("lambda(e) == 1", lllmt.lambda_bound(math.e) == 1.0)
    check("lambda(2)", abs(lllmt.lambda_bound(2.0) - math.e * math.log(2) / 2) < 1e-9)

    # coin event: value 0 is bad, x = 3/4
    run = lllmt.mt_run([2], [([0], [0])], [0.75], seed=5)
    check("mt_run success", run["status"] == "success")
    check("mt_run avoids the event", run["assignment"][0] == 1)

    chk = lllmt.check_lll([2], [([0], [0])], [0.75])
    check("check_lll ok", chk["ok"] and abs(chk["delta"] - 0.75) < 1e-12)

    # Pr[b0 | not (b0 and b1)] = 1/3
    cond = lllmt.conditional_probabilities([2, 2], [([0, 1], [3])], [([0], [1])])
    check("conditional 1/3", abs(cond[0] - 1 / 3) < 1e-12)

    # under-threshold maxsat instance is fully satisfied
    dimacs = lllmt.random_kcnf(4, 400, 60, seed=3, max_degree=4)
    rep = lllmt.maxsat_solve(dimacs, alpha=1.0, seed=7)
    check("maxsat satisfied", rep["violated_total"] == 0 and rep["under_threshold"])

    # acyclic coloring of a random-ish graph
    edges = [(i, (i + 1) % 10) for i in range(10)] + [(0, 5), (2, 7)]
    run = lllmt.acyclic_color(10, edges, seed=11)
    check("acyclic ok", run["ok"])
    check("acyclic verified", lllmt.verify_acyclic(10, edges, run["colors"]))
    check("girth petersen", lllmt.girth(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                             (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                                             (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]) == 5)

    viz = lllmt.vizing_color(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    check("vizing proper on C4", viz[0] != viz[1] and viz[1] != viz[2])

    # non-repetitive coloring of P8 with 4 colors
    p8 = [(i, i + 1) for i in range(7)]
    run = lllmt.nonrep_color(8, p8, eps=0.2, seed=13, palette_override=4)
    check("nonrep ok", run["ok"])
    check("nonrep verified", lllmt.verify_nonrepetitive(8, p8, run["colors"]))
    check("squarefree", lllmt.is_squarefree([1, 2, 3]) and not lllmt.is_squarefree([1, 2, 1, 2]))

    # santa base-case system
    system = lllmt.santa_gen(6, 4, 64, 1.0, seed=17)
    sol = lllmt.santa_solve(system, seed=19)
    check("santa gamma", sol["gamma_final"] > 0)
    quota = math.floor(sol["gamma_final"] * 64 + 1e-9)
    seen = set()
    for items in sol["assignment"]:
        check("santa quota", len(items) >= quota)
        for item in items:
            check("santa disjoint", item not in seen)
            seen.add(item)

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
