/** Import-time smoke for the browser entry module.
 *
 * The unit tests exercise the pure modules directly, but only the browser
 * loads app.js; a bad import specifier or an import-time crash there would
 * otherwise surface only when someone opens the UI. Stub just enough DOM
 * for the module to load and register its boot listener.
 */

import assert from "node:assert/strict";
import { test } from "node:test";

test("app module loads and registers its boot listener", async () => {
  const listeners: string[] = [];
  const fakeDocument = {
    addEventListener: (name: string) => listeners.push(name),
    getElementById: () => null,
    querySelectorAll: () => [],
  };
  (globalThis as Record<string, unknown>).document = fakeDocument;
  try {
    await import("../src/app.js");
    assert.deepEqual(listeners, ["DOMContentLoaded"]);
  } finally {
    delete (globalThis as Record<string, unknown>).document;
  }
});
