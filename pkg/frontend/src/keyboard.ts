// Keyboard bindings for the labeling loop. The handler takes a minimal
// event shape so scripted sessions can drive it without a real DOM.

export type KeyAction =
  | "label_true"
  | "label_false"
  | "blacklist"
  | "undo"
  | "next"
  | "prev"
  | "refresh";

export interface KeyEventLike {
  key: string;
  preventDefault(): void;
  target?: { tagName?: string } | null;
}

const BINDINGS: Record<string, KeyAction> = {
  y: "label_true",
  n: "label_false",
  b: "blacklist",
  u: "undo",
  j: "next",
  arrowright: "next",
  k: "prev",
  arrowleft: "prev",
  r: "refresh",
};

export function actionForKey(key: string): KeyAction | null {
  return BINDINGS[key.toLowerCase()] ?? null;
}

export function makeKeyHandler(
  actions: Record<KeyAction, () => void>,
): (event: KeyEventLike) => void {
  return (event) => {
    const tag = event.target?.tagName?.toLowerCase();
    if (tag === "input" || tag === "textarea" || tag === "select") return;
    const action = actionForKey(event.key);
    if (!action) return;
    event.preventDefault();
    actions[action]();
  };
}
