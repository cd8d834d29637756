#!/usr/bin/env python3
"""Reference counts for the dual-algebra dimension tables.

Counts length-q words over {1..m-1} in which no letter is followed by its
successor, by brute-force enumeration, and cross-checks the linear recursion.
Prints the tables frozen into tests/test_qma.cpp and tests/acceptance.cpp.
"""

from itertools import product


def phi_enumerate(m, q):
    if q < 0:
        return 0
    count = 0
    for word in product(range(1, m), repeat=q):
        if all(b != a + 1 for a, b in zip(word, word[1:])):
            count += 1
    return count


def phi_recursion(m, q):
    memo = [1]
    for n in range(1, q + 1):
        acc = 0
        for r in range(1, m):
            if r > n:
                break
            acc += (1 if r % 2 == 1 else -1) * (m - r) * memo[n - r]
        memo.append(acc)
    return memo[q]


def phi_constrained(m, q, first_not_one=False, last_not_top=False):
    if q == 0:
        return 1
    count = 0
    for word in product(range(1, m), repeat=q):
        if not all(b != a + 1 for a, b in zip(word, word[1:])):
            continue
        if first_not_one and word[0] == 1:
            continue
        if last_not_top and word[-1] == m - 1:
            continue
        count += 1
    return count


def main():
    for m in (2, 3, 4, 5):
        limit = 12 if m <= 4 else 9
        table = [phi_enumerate(m, q) for q in range(limit + 1)]
        rec = [phi_recursion(m, q) for q in range(limit + 1)]
        assert table == rec, (m, table, rec)
        extended = [phi_recursion(m, q) for q in range(13)]
        print(f"m={m}: {extended}")
    for m in (3, 4, 5):
        one = [phi_constrained(m, q, first_not_one=True) for q in range(8)]
        two = [phi_constrained(m, q, first_not_one=True, last_not_top=True) for q in range(8)]
        print(f"m={m} first!=1:          {one}")
        print(f"m={m} first!=1,last!={m-1}: {two}")


if __name__ == "__main__":
    main()
