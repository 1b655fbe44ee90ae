import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { debounce } from "../src/debounce.js";

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once on the trailing edge with the latest arguments", () => {
    const calls: number[] = [];
    const d = debounce((v: number) => calls.push(v), 150);
    d(1);
    vi.advanceTimersByTime(100);
    d(2);
    vi.advanceTimersByTime(100);
    d(3);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([3]);
  });

  it("flush fires the pending call immediately", () => {
    const calls: number[] = [];
    const d = debounce((v: number) => calls.push(v), 150);
    d(7);
    d.flush();
    expect(calls).toEqual([7]);
    d.flush(); // nothing pending: no double fire
    expect(calls).toEqual([7]);
  });

  it("cancel drops the pending call", () => {
    const calls: number[] = [];
    const d = debounce((v: number) => calls.push(v), 150);
    d(9);
    d.cancel();
    vi.advanceTimersByTime(500);
    expect(calls).toEqual([]);
  });
});
