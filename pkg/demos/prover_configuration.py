"""The same goal under three prover configurations.

Shows how rule toggles change the proof shape, how the explain flag
changes the narration without changing the tree, and what a resource
limit looks like when it bites.

Run with  python3 demos/prover_configuration.py
"""

from tma.parser import parse_formula
from tma.presenter import render_proof, render_text
from tma.prover import Limits, default_config, prove


def dump(tree):
    for node in tree.nodes.values():
        rule = f" [{node.rule_id}]" if node.rule_id else ""
        print(f"  {'  ' * node.depth}{node.id} {node.node_type}"
              f"{rule} {node.status}")


goal = parse_formula("p => q")
knowledge = [("1", parse_formula("not q => not p"))]

# with this knowledge the direct attempt dead-ends, so the default
# search records the failed branch and falls back to contraposition
print("== default configuration: direct attempt fails, fallback wins ==")
tree = prove(goal, knowledge)
dump(tree)
print()

print("== direct rule disabled: the dead end never appears ==")
config = default_config()
config.rule_states["impl-goal-direct"].active = False
contra = prove(goal, knowledge, config)
dump(contra)
print()

print("== narration with assumption instantiation silenced ==")
config = default_config()
config.rule_states["forall-kb-instantiate"].explain = False
quiet = prove(parse_formula("mortal[socrates]"),
              [("1", parse_formula("forall[x, man[x] => mortal[x]]")),
               ("2", parse_formula("man[socrates]"))],
              config)
print(render_text(render_proof(quiet)), end="")
print()

print("== node budget of 3 on a goal that needs more ==")
config = default_config()
config.limits = Limits(max_nodes=3)
capped = prove(goal, knowledge, config)
print(f"  success: {capped.success}, reason: {capped.reason}")
