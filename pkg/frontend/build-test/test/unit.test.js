/** DOM-free unit tests for the UI's pure logic. */
import assert from "node:assert/strict";
import { test } from "node:test";
import { spanText, spanToOffsets } from "../src/highlight.js";
import { dangerRowCount, describeLocation, escapeHtml, highlightedText, renderComparisonTable, renderClassTree, renderDangerPanel, renderSourceWithHighlight, } from "../src/render.js";
import { SelectionState, requestKey } from "../src/state.js";
function reportWith(counts, dangers = []) {
    return {
        refactoring: "pull-up-method",
        params: {},
        dangers,
        summary: { per_label_counts: counts },
        baseline_generation: 1,
        diagnostics: [],
    };
}
test("span at line 1 col 1 highlights the very first character", () => {
    const text = "class A {\n}\n";
    const range = spanToOffsets(text, { file: "a", line: 1, col: 1, end_line: 1, end_col: 5 });
    assert.deepEqual(range, { start: 0, end: 5 });
    assert.equal(spanText(text, { file: "a", line: 1, col: 1, end_line: 1, end_col: 5 }), "class");
});
test("multi-line spans cover inclusive end positions", () => {
    const text = "one\ntwo\nthree\n";
    const span = { file: "a", line: 2, col: 2, end_line: 3, end_col: 3 };
    assert.equal(spanText(text, span), "wo\nthr");
});
test("rendered mark wraps exactly the span text", () => {
    const text = 'int x = "a<b";\nint y = 2;\n';
    const span = { file: "a", line: 1, col: 9, end_line: 1, end_col: 13 };
    const html = renderSourceWithHighlight(text, span);
    assert.equal(highlightedText(html), '"a<b"');
    assert.ok(html.includes('<mark id="danger-highlight">'));
});
test("danger panel row count equals the report's danger count", () => {
    const dangers = [
        {
            label: "AM-1",
            detector: "DoubleDefinition.Method",
            message: "already defined",
            locations: [{ file: "f.jsub", line: 5, col: 5, end_line: 7, end_col: 5 }],
            microstep: "1.1",
        },
        {
            label: "MM-1",
            detector: "BrokenLocalReferences.Method",
            message: "local refs",
            locations: [{ synthetic_desc: "method m() in class K" }],
            microstep: "1",
        },
    ];
    const html = renderDangerPanel(reportWith({ "AM-1": 1, "MM-1": 1 }, dangers));
    assert.equal(dangerRowCount(html), 2);
});
test("zero dangers renders the green empty state", () => {
    const html = renderDangerPanel(reportWith({}));
    assert.ok(html.includes("No dangers detected"));
    assert.equal(dangerRowCount(html), 0);
});
test("locations describe themselves as file:line:col or synthetic", () => {
    assert.equal(describeLocation({ file: "f.jsub", line: 3, col: 5, end_line: 3, end_col: 9 }), "f.jsub:3:5");
    assert.equal(describeLocation({ synthetic_desc: "method m() in class K" }), "[method m() in class K]");
});
test("class tree renders empty state for projects with no classes", () => {
    assert.ok(renderClassTree([], new Map()).includes("no classes"));
});
test("request keys are order-insensitive and cache hits work", () => {
    const a = requestKey({ refactoring: "move-method", method: "A.m()", destination: "B" });
    const b = requestKey({ destination: "B", method: "A.m()", refactoring: "move-method" });
    assert.equal(a, b);
    const state = new SelectionState();
    state.refactoring = "move-method";
    state.methodSelector = "A.m()";
    state.destination = "B";
    const request = state.currentRequest();
    assert.ok(request);
    const token = state.begin(request);
    assert.ok(state.accept(request, token, reportWith({ "AM-1": 1 })));
    assert.deepEqual(state.cached(request)?.summary.per_label_counts, { "AM-1": 1 });
});
test("stale responses are discarded when a newer request supersedes them", () => {
    const state = new SelectionState();
    state.refactoring = "move-method";
    state.methodSelector = "A.m()";
    state.destination = "B";
    const request = state.currentRequest();
    const oldToken = state.begin(request);
    const newToken = state.begin(request); // supersedes the first
    assert.equal(state.accept(request, oldToken, reportWith({ "AM-1": 9 })), false);
    assert.equal(state.cached(request), undefined);
    assert.equal(state.accept(request, newToken, reportWith({ "AM-1": 1 })), true);
    assert.deepEqual(state.cached(request)?.summary.per_label_counts, { "AM-1": 1 });
});
test("comparison needs two cached reports and mirrors their summaries", () => {
    const state = new SelectionState();
    state.refactoring = "pull-up-method";
    state.methodSelector = "Leaf.act()";
    state.destination = "Mid";
    const toMid = state.currentRequest();
    state.accept(toMid, state.begin(toMid), reportWith({ "AM-1": 1, "RM-2": 0 }));
    assert.equal(state.comparisonEnabled(), false);
    state.destination = "Top";
    const toTop = state.currentRequest();
    state.accept(toTop, state.begin(toTop), reportWith({ "AM-1": 1, "RM-2": 2 }));
    assert.equal(state.comparisonEnabled(), true);
    const table = state.comparison();
    assert.deepEqual(table.labels, ["AM-1", "RM-2"]);
    assert.equal(table.columns.length, 2);
    const byDest = Object.fromEntries(table.columns.map((c) => [c.destination, c.counts]));
    assert.deepEqual(byDest["Mid (pull-up-method)"], { "AM-1": 1, "RM-2": 0 });
    assert.deepEqual(byDest["Top (pull-up-method)"], { "AM-1": 1, "RM-2": 2 });
});
test("identical reports produce identical comparison columns", () => {
    const state = new SelectionState();
    state.refactoring = "move-method";
    state.methodSelector = "A.m()";
    const counts = { "MM-1": 1 };
    for (const destination of ["B", "C"]) {
        state.destination = destination;
        const request = state.currentRequest();
        state.accept(request, state.begin(request), reportWith({ ...counts }));
    }
    const table = state.comparison();
    assert.deepEqual(table.columns[0].counts, table.columns[1].counts);
    const html = renderComparisonTable(table);
    const cells = [...html.matchAll(/<td data-label="MM-1">(\d+)<\/td>/g)].map((m) => m[1]);
    assert.deepEqual(cells, ["1", "1"]);
});
test("comparison table is disabled below two columns", () => {
    const html = renderComparisonTable({ labels: [], columns: [] });
    assert.ok(html.includes("compare-disabled"));
});
test("html escaping", () => {
    assert.equal(escapeHtml(`<a b="c">&'`), "&lt;a b=&quot;c&quot;&gt;&amp;&#39;");
});
