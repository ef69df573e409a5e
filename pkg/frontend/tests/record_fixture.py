# Regenerates fixtures/syllogism.json by driving the backend service
# in-process. Run from the repository root after backend changes:
#
#   python3 frontend/tests/record_fixture.py

import json
import pathlib

from fastapi.testclient import TestClient

from tma.service import create_app

OUT = pathlib.Path(__file__).parent / "fixtures" / "syllogism.json"
API = "/api/v1"
DOC = "/fixture/syllogism.tnb"

CELLS = [
    "forall[x, man[x] => mortal[x]]",
    "man[socrates]",
    "mortal[socrates]",
]


def get(client, path):
    res = client.get(API + path)
    res.raise_for_status()
    return res.json()


def post(client, path, body=None):
    res = client.post(API + path, json=body)
    res.raise_for_status()
    return res.json()


def main():
    client = TestClient(create_app())

    post(client, "/documents/new", {"path": DOC})
    cell_ids = []
    for text in CELLS:
        cid = post(client, "/documents/insert-cell",
                   {"path": DOC, "kind": "formula", "text": text,
                    "group_id": None})["cell_id"]
        post(client, "/documents/submit-cell", {"path": DOC, "cell_id": cid})
        cell_ids.append(cid)

    res = client.put(API + "/prove/knowledge", json={
        "unit": {"kind": "document", "doc_path": DOC}, "selected": True})
    res.raise_for_status()
    client.put(API + "/prove/goal/candidate",
               json={"path": DOC, "cell_id": cell_ids[-1]}).raise_for_status()
    post(client, "/prove/goal/confirm")

    fixture = {
        "doc_path": DOC,
        "cells": cell_ids,
        "document": get(client, f"/documents/document?path={DOC}"),
        "entries": get(client, "/session/formulae"),
        "knowledge": get(client, "/prove/knowledge"),
        "builtins": get(client, "/prove/builtins"),
        "rules": get(client, "/prove/rules"),
        "strategy": get(client, "/prove/strategy"),
        "snapshot_preview": get(client, "/prove/snapshot-preview"),
        "catalog_en": get(client, "/preferences/catalog?lang=en"),
        "catalog_de": get(client, "/preferences/catalog?lang=de"),
        "languages": get(client, "/preferences/languages"),
        "declarations": get(
            client, f"/documents/declarations-at?path={DOC}&cell_id={cell_ids[-1]}"),
    }

    proof_id = post(client, "/prove/submit")["proof_id"]
    fixture["proof_id"] = proof_id

    events = []
    with client.stream("GET", f"{API}/proofs/{proof_id}/events?start=0") as res:
        res.raise_for_status()
        for line in res.iter_lines():
            if line.startswith("data: "):
                events.append(json.loads(line[len("data: "):]))
    fixture["tree"] = get(client, f"/proofs/{proof_id}/tree")
    fixture["snapshot"] = get(client, f"/proofs/{proof_id}/snapshot")
    fixture["text_en"] = get(client, f"/proofs/{proof_id}/text?lang=en")
    fixture["text_de"] = get(client, f"/proofs/{proof_id}/text?lang=de")
    fixture["events"] = events

    OUT.write_text(json.dumps(fixture, indent=1, sort_keys=False) + "\n")
    print(f"wrote {OUT} ({len(events)} events, {len(fixture['tree']['tree']['nodes'])} nodes)")


if __name__ == "__main__":
    main()
