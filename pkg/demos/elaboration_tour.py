"""How document structure turns short statements into closed formulas.

A declaration cell scopes every formula cell below it in the same group
(and in nested groups).  Submitting a cell elaborates the declaration
chain into explicit quantifiers, conditions, and implications, so the
formula that enters the session is self-contained.

Run with  python3 demos/elaboration_tour.py
"""

from tma.document import new_document
from tma.printer import format_formula
from tma.session import Session

session = Session()
doc = new_document("/demo/auction.tnb")
session.open_document(doc)

# an environment whose declaration covers the whole definition group
env = doc.insert_group(0, None, "environment", env_kind="Definition")
doc.insert_cell(env, None, "declaration", "forall[{b, x, p, v}]")
bids = doc.insert_cell(env, None, "formula",
                       "bids[b] :<=> forall[j = 1..|b|, b_j >= 0]")

# a section with a layered declaration chain and a conditional subsection
section = doc.insert_group(0, None, "section", title="Vickrey")
doc.insert_cell(
    section, None, "declaration",
    "forall[v with valuation[v]] "
    "forall[b with bids[b], |b| = |v|] "
    "forall[x with allocation[b, x]] "
    "forall[p with vickreyPayment[b, p]] "
    "let n = |v|")
sub = doc.insert_group(section, None, "section", title="Properties")
doc.insert_cell(sub, None, "declaration", "secondPriceAuction[b, x, p] =>")
lemma = doc.insert_group(sub, None, "environment", env_kind="Lemma")
winner = doc.insert_cell(
    lemma, None, "formula",
    "forall[winner = 1..n with x_winner = 1, "
    "secondPriceAuctionWinner[b, x, p, winner]]")

for cid in (bids, winner):
    cell = doc.find_cell(cid)
    entry, warnings = session.submit_cell(doc.path, cid)
    print(f"cell {cid}: {cell.text}")
    print(f"  label      {entry.label}")
    print(f"  elaborated {format_formula(entry.formula)}")
    for w in warnings:
        print(f"  warning    {w}")
    print()
