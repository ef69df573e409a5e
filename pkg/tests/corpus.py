"""Shared formula corpus used by the round-trip tests and acceptance
suite.  Every grammar construct appears at least once."""

CORPUS = [
    # atoms and applications
    "x",
    "f[x]",
    "f[x, y, z]",
    "f[g[x], h[y]]",
    "price[good1, good2]",
    "42",
    "-7",
    "3/4",
    "-3/4",
    "True",
    "False",
    # arithmetic
    "1 + 1",
    "1 + 2 + 3",
    "a - b",
    "a - b - c",
    "a - b + c",
    "a + b - c",
    "2 * x",
    "2 * x * y",
    "x / y",
    "x / y / z",
    "2 ^ n",
    "2 ^ n ^ m",
    "(a + b) * c",
    "a + b * c",
    "-x",
    "-(a + b)",
    "(a + b) + c",
    "2 * (1/2)",
    # indexing and length
    "b_j",
    "b_1",
    "b_(j + 1)",
    "x_winner",
    "b_j_k",
    "f[x]_i",
    "|b|",
    "|b| + 1",
    "|(|a|) + 1|",
    "|b| = |v|",
    # sets and tuples
    "{}",
    "{1, 2, 3}",
    "{x, f[y]}",
    "tuple[]",
    "tuple[1, 2]",
    "tuple[a, tuple[b, c]]",
    "|{1, 2, 3}| = 3",
    "x in {1, 2}",
    # relations
    "x = y",
    "x != y",
    "x <= y",
    "x < y",
    "x >= y",
    "x > y",
    "b_j >= 0",
    "(x = y) = z",
    # connectives
    "not p",
    "not not p",
    "p and q",
    "p and q and r",
    "(p and q) and r",
    "p or q",
    "p or q or r",
    "p and q or r",
    "not p and q",
    "p => q",
    "p => q => r",
    "(p => q) => r",
    "p <=> q",
    "p => q and r",
    "p and (q => r)",
    # definitions
    "happy[x] :<=> rich[x] and wise[x]",
    "double[x] := 2 * x",
    # quantifiers
    "forall[x, p[x]]",
    "exists[x, p[x]]",
    "forall[x with p[x], q[x]]",
    "forall[j = 1..10, p[j]]",
    "forall[j = 1..|b|, b_j >= 0]",
    "forall[{x, y}, p[x, y]]",
    "exists[{x, y}, p[x, y]]",
    "forall[x, exists[y, x < y]]",
    "forall[winner = 1..n with x_winner = 1, w[winner]]",
    "forall[x, p[x]] => exists[y, p[y]]",
    "bids[b] :<=> forall[j = 1..|b|, b_j >= 0]",
    "forall[b, bids[b] :<=> forall[j = 1..|b|, b_j >= 0]]",
    "forall[x with p[x] and q[x], r[x]]",
    "not forall[x, p[x]]",
    # unicode spellings of the same constructs
    "∀ x : p[x]",
    "∃ x : p[x]",
    "∀ x with p[x] : q[x]",
    "∀ j = 1..|b| : b_j ≥ 0",
    "∀ x, y : p[x, y]",
    "p ∧ q",
    "p ∨ q",
    "¬p",
    "p ⇒ q",
    "p ⇔ q",
    "x ≤ y",
    "x ≠ y",
    "x ∈ {1, 2}",
    "⟨a, b⟩",
    "bids[b] :⟺ ∀ j = 1..|b| : b_j ≥ 0",
]
