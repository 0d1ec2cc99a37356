/** Pure HTML-string renderers. Keeping these DOM-free means every piece of
 * displayed content is testable under node, and the browser layer only
 * injects the strings and wires events. */
import { spanToOffsets } from "./highlight.js";
export function escapeHtml(text) {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;")
        .replace(/'/g, "&#39;");
}
export function describeLocation(loc) {
    if (loc.synthetic_desc !== undefined) {
        return `[${loc.synthetic_desc}]`;
    }
    return `${loc.file}:${loc.line}:${loc.col}`;
}
export function renderClassTree(classes, methodsByClass) {
    if (classes.length === 0) {
        return `<p class="empty-state">This project contains no classes.</p>`;
    }
    const items = classes.map((cls) => {
        const methods = methodsByClass.get(cls.name) ?? [];
        const methodItems = methods
            .map((m) => `<li><button class="method-pick" data-selector="${escapeHtml(m.selector)}" ` +
            `data-class="${escapeHtml(cls.name)}">` +
            `${escapeHtml(m.name)}(${escapeHtml(m.params.join(", "))})</button></li>`)
            .join("");
        return (`<li class="class-node"><span class="class-name">${escapeHtml(cls.name)}</span>` +
            `<ul class="method-list">${methodItems || "<li class='no-methods'>(no methods)</li>"}</ul></li>`);
    });
    return `<ul class="class-tree">${items.join("")}</ul>`;
}
function renderDangerRow(danger, index) {
    const where = danger.locations.map(describeLocation).join(", ");
    return (`<tr class="danger-row" data-danger-index="${index}">` +
        `<td class="danger-label">${escapeHtml(danger.label)}</td>` +
        `<td class="danger-location">${escapeHtml(where)}</td>` +
        `<td class="danger-message">${escapeHtml(danger.message)}</td>` +
        `</tr>`);
}
export function renderDangerPanel(report) {
    if (report.dangers.length === 0) {
        return `<p class="no-dangers">No dangers detected.</p>`;
    }
    const rows = report.dangers.map(renderDangerRow).join("");
    const diagnostics = report.diagnostics.length
        ? `<ul class="diagnostics">${report.diagnostics
            .map((d) => `<li>${escapeHtml(d)}</li>`)
            .join("")}</ul>`
        : "";
    return (`<table class="danger-table"><thead><tr>` +
        `<th>Label</th><th>Location</th><th>Description</th>` +
        `</tr></thead><tbody>${rows}</tbody></table>` +
        diagnostics);
}
/** Count of rendered danger rows; must equal report.dangers.length. */
export function dangerRowCount(panelHtml) {
    return (panelHtml.match(/class="danger-row"/g) ?? []).length;
}
export function renderComparisonTable(table) {
    if (table.columns.length < 2) {
        return `<p class="compare-disabled">Analyze at least two destinations to compare.</p>`;
    }
    const header = table.columns
        .map((c) => `<th data-report-key="${escapeHtml(c.key)}">${escapeHtml(c.destination)}</th>`)
        .join("");
    const body = table.labels
        .map((label) => {
        const cells = table.columns
            .map((c) => `<td data-label="${escapeHtml(label)}">${c.counts[label] ?? 0}</td>`)
            .join("");
        return `<tr><th>${escapeHtml(label)}</th>${cells}</tr>`;
    })
        .join("");
    return (`<table class="compare-table"><thead><tr><th>label</th>${header}</tr></thead>` +
        `<tbody>${body}</tbody></table>`);
}
/** Source text with the span wrapped in a <mark>. The mark carries
 * id="danger-highlight" so the browser layer can scroll to it. */
export function renderSourceWithHighlight(text, span) {
    if (span === null) {
        return `<pre class="source-pane">${escapeHtml(text)}</pre>`;
    }
    const { start, end } = spanToOffsets(text, span);
    const before = escapeHtml(text.slice(0, start));
    const marked = escapeHtml(text.slice(start, end));
    const after = escapeHtml(text.slice(end));
    return (`<pre class="source-pane">${before}` +
        `<mark id="danger-highlight">${marked}</mark>` +
        `${after}</pre>`);
}
/** The exact characters the rendered mark wraps (unescaped). */
export function highlightedText(sourceHtml) {
    const match = sourceHtml.match(/<mark id="danger-highlight">([\s\S]*?)<\/mark>/);
    if (!match)
        return "";
    return match[1]
        .replace(/&lt;/g, "<")
        .replace(/&gt;/g, ">")
        .replace(/&quot;/g, '"')
        .replace(/&#39;/g, "'")
        .replace(/&amp;/g, "&");
}
