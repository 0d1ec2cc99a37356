/** Selection and analysis-cache state, free of any DOM dependency.
 *
 * The cache is keyed by the full analysis request, so what-if runs against
 * different destinations coexist. Each destination has at most one
 * in-flight analysis: a newer request for the same destination supersedes
 * the older one, whose response is discarded when it finally lands.
 */
export function requestKey(request) {
    const method = Array.isArray(request.method) ? [...request.method] : request.method;
    return JSON.stringify({
        destination: request.destination,
        method,
        refactoring: request.refactoring,
    });
}
export class SelectionState {
    refactoring = null;
    methodSelector = null;
    extraSelectors = []; // additional methods for combine
    destination = null;
    destinationCandidates = [];
    cache = new Map();
    inflight = new Map(); // destination -> latest token
    nextToken = 1;
    isComplete() {
        return Boolean(this.refactoring && this.methodSelector && this.destination);
    }
    currentRequest() {
        if (!this.isComplete())
            return null;
        const method = this.refactoring === "combine-methods-into-class"
            ? [this.methodSelector, ...this.extraSelectors]
            : this.methodSelector;
        return {
            refactoring: this.refactoring,
            method,
            destination: this.destination,
        };
    }
    /** Register an outgoing analysis; the returned token must accompany the
     * response. A later begin() for the same destination invalidates it. */
    begin(request) {
        const token = this.nextToken++;
        this.inflight.set(request.destination, token);
        return token;
    }
    /** Accept a response unless a newer request for the destination
     * superseded it. Returns whether the report was kept. */
    accept(request, token, report) {
        if (this.inflight.get(request.destination) !== token) {
            return false; // stale: a newer request key owns this destination
        }
        this.inflight.delete(request.destination);
        const key = requestKey(request);
        this.cache.set(key, { key, request, report });
        return true;
    }
    /** Drop the in-flight marker after a failed analysis. */
    fail(request, token) {
        if (this.inflight.get(request.destination) === token) {
            this.inflight.delete(request.destination);
        }
    }
    cached(request) {
        return this.cache.get(requestKey(request))?.report;
    }
    /** All cached reports for the currently selected method. */
    reportsForCurrentMethod() {
        if (!this.methodSelector)
            return [];
        const selector = this.methodSelector;
        return [...this.cache.values()]
            .filter((entry) => {
            const m = entry.request.method;
            return Array.isArray(m) ? m.includes(selector) : m === selector;
        })
            .sort((a, b) => a.key.localeCompare(b.key));
    }
    /** Comparison is meaningful only with two or more cached runs. */
    comparisonEnabled() {
        return this.reportsForCurrentMethod().length >= 2;
    }
    comparison() {
        const entries = this.reportsForCurrentMethod();
        const labels = new Set();
        for (const entry of entries) {
            for (const label of Object.keys(entry.report.summary.per_label_counts)) {
                labels.add(label);
            }
        }
        return {
            labels: [...labels].sort(),
            columns: entries.map((entry) => ({
                destination: `${entry.request.destination} (${entry.request.refactoring})`,
                key: entry.key,
                counts: { ...entry.report.summary.per_label_counts },
            })),
        };
    }
}
