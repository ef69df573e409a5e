"""Desk-scale proving problems shared by the prover tests and the
acceptance suite.  Each entry: (name, goal, knowledge) with knowledge
as (label, text) pairs."""

PROVABLE = [
    ("identity-implication", "a => a", []),
    ("and-left", "p and q => p", []),
    ("and-commutes", "p and q => q and p", []),
    ("or-intro-left", "p => p or q", []),
    ("or-intro-right", "q => p or q", []),
    ("excluded-middle", "a or not a", []),
    ("no-contradiction", "not (p and not p)", []),
    ("chain-implications", "(p => q) and (q => r) => (p => r)", []),
    ("weakening", "p => (q => p)", []),
    ("distribution",
     "(p => (q => r)) => ((p => q) => (p => r))", []),
    ("detachment", "p and (p => q) => q", []),
    ("double-negation-intro", "p => not not p", []),
    ("double-negation-elim", "not not p => p", []),
    ("contraposition-law", "(a => b) => (not b => not a)", []),
    ("iff-reflexive", "p <=> p", []),
    ("syllogism", "forall[x, q[x]]",
     [("imp", "forall[x, p[x] => q[x]]"), ("base", "forall[x, p[x]]")]),
    ("syllogism-chain", "forall[x, r[x]]",
     [("pr", "forall[x, p[x] => r[x]]"),
      ("qp", "forall[x, q[x] => p[x]]"),
      ("base", "forall[x, q[x]]")]),
    ("instance-goal", "q[a]",
     [("imp", "forall[x, p[x] => q[x]]"), ("fact", "p[a]")]),
    ("instance-goal-reordered", "s[a]",
     [("fact", "p[a]"), ("imp", "forall[x, p[x] => s[x]]")]),
    ("forall-tautology", "forall[x, p[x] => p[x]]", []),
    ("forall-and-projection", "forall[x, p[x] and q[x] => p[x]]", []),
    ("forall-multi-var", "forall[{x, y}, near[x, y] => near[x, y]]", []),
    ("forall-conditioned", "forall[x with p[x], p[x]]", []),
    ("finite-range", "forall[j = 1..3, j >= 1]", []),
    ("exists-witness-in-kb", "exists[x, p[x]]", [("fact", "p[a]")]),
    ("exists-literal", "exists[x, x = 3]", []),
    ("exists-conditioned", "exists[x with x >= 2, x = 2]", []),
    ("arithmetic-ground", "1 + 1 = 2", []),
    ("set-cardinality", "|{1, 2, 3}| = 3", []),
    ("set-membership", "2 in {1, 2}", []),
    ("tuple-index", "⟨a, b⟩_1 = a", []),
    ("definition-unfold-predicate", "bids[⟨1, 2⟩]",
     [("def", "forall[b, bids[b] :<=> forall[j = 1..|b|, b_j >= 0]]")]),
    ("definition-unfold-function", "double[2] = 4",
     [("def", "forall[x, double[x] := x + x]")]),
]

UNPROVABLE = [
    ("affirming-consequent", "a => b", []),
    ("contradiction-goal", "p and not p", []),
    ("unsupported-universal", "forall[x, p[x]]", []),
    ("peirce", "((p => q) => p) => p", []),
    ("unsupported-existential", "exists[x, p[x]]", []),
]
