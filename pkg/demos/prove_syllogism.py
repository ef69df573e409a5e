"""Smallest end-to-end proof: parse, prove, read the narration.

Run with  python3 demos/prove_syllogism.py
"""

from tma.parser import parse_formula
from tma.presenter import render_proof, render_text
from tma.prover import prove

goal = parse_formula("mortal[socrates]")
knowledge = [
    ("1", parse_formula("forall[x, man[x] => mortal[x]]")),
    ("2", parse_formula("man[socrates]")),
]

tree = prove(goal, knowledge)
print(f"proved: {tree.success}  "
      f"({len(tree.nodes)} nodes, {len(tree.events)} events)")
print()

doc = render_proof(tree)
print(render_text(doc), end="")
print()
print("block -> node navigation:")
for block in doc.blocks:
    print(f"  {block.block_id:>4} -> node {block.node_id}")
