import { describe, expect, it, vi } from "vitest";

import { actionForKey, makeKeyHandler } from "../src/keyboard.js";

describe("actionForKey", () => {
  it("maps the labeling keys", () => {
    expect(actionForKey("y")).toBe("label_true");
    expect(actionForKey("n")).toBe("label_false");
    expect(actionForKey("b")).toBe("blacklist");
    expect(actionForKey("u")).toBe("undo");
    expect(actionForKey("Y")).toBe("label_true");
    expect(actionForKey("ArrowRight")).toBe("next");
  });

  it("ignores unbound keys", () => {
    expect(actionForKey("q")).toBeNull();
    expect(actionForKey("Escape")).toBeNull();
  });
});

describe("makeKeyHandler", () => {
  function actions() {
    return {
      label_true: vi.fn(),
      label_false: vi.fn(),
      blacklist: vi.fn(),
      undo: vi.fn(),
      next: vi.fn(),
      prev: vi.fn(),
      refresh: vi.fn(),
    };
  }

  it("dispatches and consumes bound keys", () => {
    const acts = actions();
    const handler = makeKeyHandler(acts);
    const prevent = vi.fn();
    handler({ key: "y", preventDefault: prevent });
    expect(acts.label_true).toHaveBeenCalledOnce();
    expect(prevent).toHaveBeenCalledOnce();
  });

  it("leaves keystrokes inside form fields alone", () => {
    const acts = actions();
    const handler = makeKeyHandler(acts);
    handler({ key: "y", preventDefault: vi.fn(), target: { tagName: "INPUT" } });
    expect(acts.label_true).not.toHaveBeenCalled();
  });

  it("does nothing for unbound keys", () => {
    const acts = actions();
    const handler = makeKeyHandler(acts);
    const prevent = vi.fn();
    handler({ key: "x", preventDefault: prevent });
    expect(prevent).not.toHaveBeenCalled();
  });
});
