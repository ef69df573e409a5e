// On-screen keyboard. Keys carry one meaning per modifier layer;
// pressing a key inserts its cap at the caret of the attached editor
// and selects the first placeholder slot so typing fills it.

import {
  DEFAULT_LAYOUT, KeyboardLayout, KeyCap, KeyDef, layerName, Modifier,
  MODIFIERS, SLOT,
} from "./layouts.js";

export function capForLayer(key: KeyDef, layer: string): KeyCap {
  const exact = key.caps[layer];
  if (exact) return exact;
  // combo falls back to its strongest single modifier, then base
  for (const part of layer.split("+").reverse()) {
    if (key.caps[part]) return key.caps[part];
  }
  return key.caps.base;
}

export interface Editable {
  value: string;
  selectionStart: number;
  selectionEnd: number;
  focus(): void;
}

/** Insert a cap at the caret; returns the new caret range. */
export function insertCap(editor: Editable, text: string): [number, number] {
  const start = editor.selectionStart;
  const end = editor.selectionEnd;
  editor.value = editor.value.slice(0, start) + text + editor.value.slice(end);
  const slot = text.indexOf(SLOT);
  let range: [number, number];
  if (slot >= 0) {
    range = [start + slot, start + slot + SLOT.length];
  } else {
    range = [start + text.length, start + text.length];
  }
  editor.selectionStart = range[0];
  editor.selectionEnd = range[1];
  return range;
}

/** Move the selection to the next placeholder after the caret, if any. */
export function selectNextSlot(editor: Editable): boolean {
  const from = editor.selectionEnd;
  const at = editor.value.indexOf(SLOT, from);
  if (at < 0) return false;
  editor.selectionStart = at;
  editor.selectionEnd = at + SLOT.length;
  return true;
}

export class VirtualKeyboard {
  private active = new Set<Modifier>();
  private editor: Editable | null = null;
  private root: HTMLElement | null = null;

  constructor(private layout: KeyboardLayout = DEFAULT_LAYOUT) {}

  get layer(): string {
    return layerName(this.active);
  }

  attach(editor: Editable): void {
    this.editor = editor;
  }

  setModifier(mod: Modifier, on: boolean): void {
    if (on) this.active.add(mod);
    else this.active.delete(mod);
    this.recap();
  }

  toggleModifier(mod: Modifier): void {
    this.setModifier(mod, !this.active.has(mod));
  }

  press(keyId: string): void {
    const key = this.findKey(keyId);
    if (!key || !this.editor) return;
    insertCap(this.editor, capForLayer(key, this.layer).insert);
    // Shift is one-shot, like a typewriter; Mod and Ctrl latch
    if (this.active.has("shift")) this.setModifier("shift", false);
    this.editor.focus();
  }

  private findKey(keyId: string): KeyDef | undefined {
    for (const block of this.layout.blocks) {
      for (const row of block.rows) {
        for (const key of row) if (key.id === keyId) return key;
      }
    }
    return undefined;
  }

  render(container: HTMLElement): void {
    this.root = container;
    container.innerHTML = "";
    container.classList.add("vkeyboard");

    const mods = document.createElement("div");
    mods.className = "vk-modifiers";
    for (const mod of MODIFIERS) {
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.modifier = mod;
      button.textContent = mod;
      button.addEventListener("click", () => {
        this.toggleModifier(mod);
        button.classList.toggle("vk-on", this.active.has(mod));
      });
      mods.appendChild(button);
    }
    container.appendChild(mods);

    for (const block of this.layout.blocks) {
      const el = document.createElement("div");
      el.className = "vk-block";
      el.dataset.block = block.id;
      for (const row of block.rows) {
        const rowEl = document.createElement("div");
        rowEl.className = "vk-row";
        for (const key of row) {
          const button = document.createElement("button");
          button.type = "button";
          button.dataset.key = key.id;
          button.addEventListener("click", () => {
            this.press(key.id);
            this.recap();
          });
          rowEl.appendChild(button);
        }
        el.appendChild(rowEl);
      }
      container.appendChild(el);
    }
    this.recap();
  }

  /** Relabel every key for the active layer. */
  private recap(): void {
    if (!this.root) return;
    const layer = this.layer;
    this.root.querySelectorAll<HTMLButtonElement>("button[data-key]").forEach((button) => {
      const key = this.findKey(button.dataset.key!);
      if (!key) return;
      const cap = capForLayer(key, layer);
      button.textContent = cap.label ?? cap.insert;
    });
    this.root.querySelectorAll<HTMLButtonElement>("button[data-modifier]").forEach((button) => {
      const mod = button.dataset.modifier as Modifier;
      button.classList.toggle("vk-on", this.active.has(mod));
    });
  }
}
