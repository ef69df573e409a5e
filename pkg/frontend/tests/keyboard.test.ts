// Virtual keyboard: every key inserts its documented text for the
// active modifier layer, skeleton keys leave the caret on the first
// placeholder slot, and the modifier buttons relabel the whole board.

import { beforeEach, describe, expect, it } from "vitest";
import {
  Editable,
  VirtualKeyboard,
  capForLayer,
  insertCap,
  selectNextSlot,
} from "../src/keyboard.js";
import { DEFAULT_LAYOUT, SLOT, layerName } from "../src/layouts.js";

function editor(value = "", caret = value.length): Editable {
  return {
    value,
    selectionStart: caret,
    selectionEnd: caret,
    focus() {},
  };
}

describe("insertion", () => {
  it("inserts plain text at the caret", () => {
    const ed = editor("ab", 1);
    insertCap(ed, "X");
    expect(ed.value).toBe("aXb");
    expect(ed.selectionStart).toBe(2);
    expect(ed.selectionEnd).toBe(2);
  });

  it("replaces a selection", () => {
    const ed = editor("hello");
    ed.selectionStart = 1;
    ed.selectionEnd = 4;
    insertCap(ed, "i");
    expect(ed.value).toBe("hio");
  });

  it("selects the first slot of a skeleton", () => {
    const ed = editor();
    insertCap(ed, `forall[${SLOT}, ${SLOT}]`);
    expect(ed.value).toBe(`forall[${SLOT}, ${SLOT}]`);
    expect(ed.value.slice(ed.selectionStart, ed.selectionEnd)).toBe(SLOT);
    expect(ed.selectionStart).toBe("forall[".length);
  });

  it("steps to the next slot on request", () => {
    const ed = editor();
    insertCap(ed, `forall[${SLOT}, ${SLOT}]`);
    expect(selectNextSlot(ed)).toBe(true);
    expect(ed.value.slice(ed.selectionStart, ed.selectionEnd)).toBe(SLOT);
    expect(ed.selectionStart).toBeGreaterThan("forall[".length);
    expect(selectNextSlot(ed)).toBe(false);
  });
});

describe("keys and layers", () => {
  let kb: VirtualKeyboard;
  let ed: Editable;

  beforeEach(() => {
    kb = new VirtualKeyboard();
    ed = editor();
    kb.attach(ed);
  });

  it("sympad forall inserts the quantifier skeleton", () => {
    kb.press("sym-forall");
    expect(ed.value).toBe(`∀ ${SLOT} : ${SLOT}`);
    expect(ed.value.slice(ed.selectionStart, ed.selectionEnd)).toBe(SLOT);
    expect(ed.selectionStart).toBe(2);
  });

  it("sympad forall with shift adds the condition", () => {
    kb.setModifier("shift", true);
    kb.press("sym-forall");
    expect(ed.value).toBe(`∀ ${SLOT} with ${SLOT} : ${SLOT}`);
  });

  it("expad forall-with inserts the bracketed form", () => {
    kb.press("ex-forall-with");
    expect(ed.value).toBe(`forall[${SLOT} with ${SLOT}, ${SLOT}]`);
    expect(ed.selectionStart).toBe("forall[".length);
  });

  it("every key of every layer inserts its documented cap", () => {
    for (const block of DEFAULT_LAYOUT.blocks) {
      for (const row of block.rows) {
        for (const key of row) {
          for (const layer of ["base", "shift", "mod", "ctrl"]) {
            const fresh = editor();
            kb.attach(fresh);
            kb.setModifier("shift", layer === "shift");
            kb.setModifier("mod", layer === "mod");
            kb.setModifier("ctrl", layer === "ctrl");
            kb.press(key.id);
            expect(fresh.value).toBe(capForLayer(key, layer).insert);
          }
        }
      }
    }
  });

  it("shift uppercases letters and releases after one press", () => {
    kb.setModifier("shift", true);
    expect(kb.layer).toBe("shift");
    kb.press("char-a");
    expect(ed.value).toBe("A");
    expect(kb.layer).toBe("base");
    kb.press("char-a");
    expect(ed.value).toBe("Aa");
  });

  it("mod turns a letter into an indexed occurrence", () => {
    kb.setModifier("mod", true);
    kb.press("char-b");
    expect(ed.value).toBe(`b_${SLOT}`);
    // mod latches, unlike shift
    expect(kb.layer).toBe("mod");
  });

  it("ctrl gives the ascii spelling of a symbol", () => {
    kb.setModifier("ctrl", true);
    kb.press("sym-and");
    expect(ed.value).toBe(" and ");
    kb.press("sym-forall");
    expect(ed.value).toBe(` and forall[${SLOT}, ${SLOT}]`);
  });

  it("combos fall back to the strongest single modifier", () => {
    const key = DEFAULT_LAYOUT.blocks
      .flatMap((b) => b.rows.flat())
      .find((k) => k.id === "char-a")!;
    expect(layerName(new Set(["shift", "mod"]))).toBe("shift+mod");
    expect(capForLayer(key, "shift+mod").insert).toBe(`a_${SLOT}`);
    expect(capForLayer(key, "shift").insert).toBe("A");
    expect(capForLayer(key, "ctrl").insert).toBe("a");
  });
});

describe("rendered board", () => {
  it("relabels every key when a modifier is toggled", () => {
    const kb = new VirtualKeyboard();
    const ed = editor();
    kb.attach(ed);
    const host = document.createElement("div");
    kb.render(host);

    const keyButton = (id: string) =>
      host.querySelector<HTMLButtonElement>(`button[data-key="${id}"]`)!;
    expect(keyButton("char-a").textContent).toBe("a");
    expect(keyButton("sym-and").textContent).toBe(" ∧ ");

    const shift = host.querySelector<HTMLButtonElement>(
      'button[data-modifier="shift"]')!;
    shift.click();
    expect(shift.classList.contains("vk-on")).toBe(true);
    expect(keyButton("char-a").textContent).toBe("A");

    keyButton("char-a").click();
    expect(ed.value).toBe("A");
    // one-shot: the board drops back to the base layer
    expect(keyButton("char-a").textContent).toBe("a");

    const ctrl = host.querySelector<HTMLButtonElement>(
      'button[data-modifier="ctrl"]')!;
    ctrl.click();
    expect(keyButton("sym-and").textContent).toBe(" and ");
  });

  it("keeps the block order with the expression pad left and symbols right", () => {
    const kb = new VirtualKeyboard();
    const host = document.createElement("div");
    kb.render(host);
    const ids = [...host.querySelectorAll<HTMLElement>(".vk-block")]
      .map((el) => el.dataset.block);
    expect(ids).toEqual(["expad", "chars", "numpad", "sympad"]);
  });
});
