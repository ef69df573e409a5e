"""Drive the HTTP API in-process: author, select, prove, inspect.

Uses the test client so no port is claimed; every call below works the
same against a real server started with  tma serve.

Run with  python3 demos/service_tour.py
"""

import time

from fastapi.testclient import TestClient

from tma.service import create_app

client = TestClient(create_app())
api = "/api/v1"
path = "/demo/logic.tnb"

# author a notebook through the API
client.post(f"{api}/documents/new", json={"path": path})
for text in ("forall[x, man[x] => mortal[x]]",
             "man[socrates]",
             "mortal[socrates]"):
    r = client.post(f"{api}/documents/insert-cell",
                    json={"path": path, "kind": "formula", "text": text})
    cell_id = r.json()["cell_id"]
    client.post(f"{api}/documents/submit-cell",
                json={"path": path, "cell_id": cell_id})

print("session entries:")
for row in client.get(f"{api}/session/formulae").json()["entries"]:
    print(f"  ({row['label']}) {row['formula']}")

# select the whole document as proof knowledge; the goal is excluded
# from its own knowledge base automatically at submit time
client.put(f"{api}/prove/knowledge",
           json={"unit": {"kind": "document", "doc_path": path},
                 "selected": True})
client.put(f"{api}/prove/goal/candidate",
           json={"path": path, "cell_id": cell_id})
client.post(f"{api}/prove/goal/confirm")
proof_id = client.post(f"{api}/prove/submit").json()["proof_id"]

while not client.get(f"{api}/proofs/{proof_id}/tree").json()["done"]:
    time.sleep(0.05)

tree = client.get(f"{api}/proofs/{proof_id}/tree").json()["tree"]
print(f"\nproved: {tree['success']}  nodes: {len(tree['nodes'])}")

text = client.get(f"{api}/proofs/{proof_id}/text").json()
print("\nnarration blocks:")
for block in text["blocks"]:
    print(f"  [{block['block_id']} <- node {block['node_id']}] "
          f"{block['text']}")

snapshot = client.get(f"{api}/proofs/{proof_id}/snapshot").json()
print(f"\nsnapshot strategy: {snapshot['snapshot']['strategy_id']}")
