#!/usr/bin/env python3
"""Minimal DIMACS solver used to exercise the external-backend path in tests.

Plain DPLL with unit propagation; fine for tiny formulas, not a real solver.
Prints the conventional `s SATISFIABLE` / `s UNSATISFIABLE` and `v` lines.
"""
import sys


def parse(path):
    clauses = []
    nvars = 0
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith(("c", "%")):
                continue
            if line.startswith("p"):
                nvars = int(line.split()[2])
                continue
            lits = [int(x) for x in line.split()]
            if lits and lits[-1] == 0:
                lits.pop()
            if lits or line.startswith("0"):
                clauses.append(lits)
    return nvars, clauses


def solve(nvars, clauses):
    assign = {}

    def value(lit):
        v = assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def propagate():
        changed = True
        while changed:
            changed = False
            for cl in clauses:
                unassigned = []
                sat = False
                for lit in cl:
                    v = value(lit)
                    if v is True:
                        sat = True
                        break
                    if v is None:
                        unassigned.append(lit)
                if sat:
                    continue
                if not unassigned:
                    return False
                if len(unassigned) == 1:
                    lit = unassigned[0]
                    assign[abs(lit)] = lit > 0
                    changed = True
        return True

    def dpll():
        if not propagate():
            return False
        for v in range(1, nvars + 1):
            if v not in assign:
                snapshot = dict(assign)
                for guess in (True, False):
                    assign.clear()
                    assign.update(snapshot)
                    assign[v] = guess
                    if dpll():
                        return True
                assign.clear()
                assign.update(snapshot)
                return False
        return True

    return dpll(), assign


def main():
    nvars, clauses = parse(sys.argv[1])
    sat, assign = solve(nvars, clauses)
    if not sat:
        print("s UNSATISFIABLE")
        sys.exit(20)
    print("s SATISFIABLE")
    lits = [v if assign.get(v, False) else -v for v in range(1, nvars + 1)]
    print("v " + " ".join(str(x) for x in lits) + " 0")
    sys.exit(10)


if __name__ == "__main__":
    main()
