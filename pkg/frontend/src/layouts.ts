// Keyboard layout data, kept apart from the engine so boards can be
// translated or customized without touching any logic. A cap's text
// may contain placeholder slots; the engine selects the first slot
// after inserting.
//
// Layer names: "base", "shift", "mod", "ctrl", and combinations
// joined with "+" in that order (e.g. "shift+mod"). A key without a
// cap for the active layer falls back as defined in the engine.

export const SLOT = "▢"; // the visible placeholder: ▢

export interface KeyCap {
  /** label shown on the key; defaults to the inserted text */
  label?: string;
  insert: string;
}

export interface KeyDef {
  id: string;
  caps: Record<string, KeyCap>;
}

export interface KeyboardBlock {
  id: string;
  rows: KeyDef[][];
}

export interface KeyboardLayout {
  id: string;
  blocks: KeyboardBlock[];
}

function letter(ch: string): KeyDef {
  return {
    id: `char-${ch}`,
    caps: {
      base: { insert: ch },
      shift: { insert: ch.toUpperCase() },
      // indexed occurrence, e.g. b_j
      mod: { label: `${ch}_${SLOT}`, insert: `${ch}_${SLOT}` },
    },
  };
}

function digit(ch: string): KeyDef {
  return { id: `num-${ch}`, caps: { base: { insert: ch } } };
}

function sym(id: string, text: string, ascii?: string): KeyDef {
  const caps: Record<string, KeyCap> = { base: { insert: text } };
  if (ascii) caps.ctrl = { insert: ascii };
  return { id, caps };
}

const CHAR_ROWS: KeyDef[][] = [
  "qwertyuiop".split("").map(letter),
  "asdfghjkl".split("").map(letter),
  "zxcvbnm".split("").map(letter),
  [
    { id: "char-space", caps: { base: { label: "space", insert: " " } } },
    { id: "char-comma", caps: { base: { insert: ", " } } },
    { id: "char-paren", caps: { base: { label: `(${SLOT})`, insert: `(${SLOT})` } } },
  ],
];

const NUMPAD_ROWS: KeyDef[][] = [
  ["7", "8", "9"].map(digit),
  ["4", "5", "6"].map(digit),
  ["1", "2", "3"].map(digit),
  [digit("0"),
   { id: "num-dot", caps: { base: { insert: "." }, shift: { label: `${SLOT}..${SLOT}`, insert: `${SLOT}..${SLOT}` } } },
   { id: "num-minus", caps: { base: { insert: "-" } } }],
  [sym("num-plus", " + "), sym("num-times", " * "), sym("num-divide", " / ")],
  [sym("num-eq", " = "), sym("num-lt", " < "), sym("num-gt", " > ")],
];

// expression skeletons; bracketed ascii forms of the term language
const EXPAD_ROWS: KeyDef[][] = [
  [
    { id: "ex-forall", caps: {
      base: { label: "forall", insert: `forall[${SLOT}, ${SLOT}]` },
      shift: { label: "forall-range", insert: `forall[${SLOT} = ${SLOT}..${SLOT}, ${SLOT}]` },
    } },
    { id: "ex-forall-with", caps: {
      base: { label: "forall-with", insert: `forall[${SLOT} with ${SLOT}, ${SLOT}]` },
    } },
  ],
  [
    { id: "ex-exists", caps: {
      base: { label: "exists", insert: `exists[${SLOT}, ${SLOT}]` },
      shift: { label: "exists-with", insert: `exists[${SLOT} with ${SLOT}, ${SLOT}]` },
    } },
    { id: "ex-app", caps: { base: { label: `${SLOT}[${SLOT}]`, insert: `${SLOT}[${SLOT}]` } } },
  ],
  [
    { id: "ex-define", caps: { base: { label: ":=", insert: `${SLOT} := ${SLOT}` } } },
    { id: "ex-defiff", caps: { base: { label: ":<=>", insert: `${SLOT} :<=> ${SLOT}` } } },
  ],
  [
    { id: "ex-set", caps: { base: { label: `{${SLOT}}`, insert: `{${SLOT}}` } } },
    { id: "ex-tuple", caps: { base: { label: `⟨${SLOT}⟩`, insert: `⟨${SLOT}⟩` } } },
    { id: "ex-length", caps: { base: { label: `|${SLOT}|`, insert: `|${SLOT}|` } } },
  ],
];

// mathematical symbols; ctrl gives the plain-ascii spelling
const SYMPAD_ROWS: KeyDef[][] = [
  [
    { id: "sym-forall", caps: {
      base: { label: "∀", insert: `∀ ${SLOT} : ${SLOT}` },
      shift: { label: "∀ with", insert: `∀ ${SLOT} with ${SLOT} : ${SLOT}` },
      ctrl: { label: "forall", insert: `forall[${SLOT}, ${SLOT}]` },
    } },
    { id: "sym-exists", caps: {
      base: { label: "∃", insert: `∃ ${SLOT} : ${SLOT}` },
      ctrl: { label: "exists", insert: `exists[${SLOT}, ${SLOT}]` },
    } },
  ],
  [
    sym("sym-and", " ∧ ", " and "),
    sym("sym-or", " ∨ ", " or "),
    sym("sym-not", "¬ ", "not "),
  ],
  [
    sym("sym-implies", " ⇒ ", " => "),
    sym("sym-iff", " ⇔ ", " <=> "),
    sym("sym-defiff", " :⟺ ", " :<=> "),
  ],
  [
    sym("sym-le", " ≤ ", " <= "),
    sym("sym-ge", " ≥ ", " >= "),
    sym("sym-ne", " ≠ ", " != "),
  ],
];

// block order follows the board: expad left, characters and numbers
// in the middle, sympad to the far right
export const DEFAULT_LAYOUT: KeyboardLayout = {
  id: "default",
  blocks: [
    { id: "expad", rows: EXPAD_ROWS },
    { id: "chars", rows: CHAR_ROWS },
    { id: "numpad", rows: NUMPAD_ROWS },
    { id: "sympad", rows: SYMPAD_ROWS },
  ],
};

export const MODIFIERS = ["shift", "mod", "ctrl"] as const;
export type Modifier = (typeof MODIFIERS)[number];

export function layerName(active: ReadonlySet<Modifier>): string {
  const parts = MODIFIERS.filter((m) => active.has(m));
  return parts.length === 0 ? "base" : parts.join("+");
}
