/** Selection and analysis-cache state, free of any DOM dependency.
 *
 * The cache is keyed by the full analysis request, so what-if runs against
 * different destinations coexist. Each destination has at most one
 * in-flight analysis: a newer request for the same destination supersedes
 * the older one, whose response is discarded when it finally lands.
 */

import type { AnalysisRequest, ReportDocument } from "./types.js";

export function requestKey(request: AnalysisRequest): string {
  const method = Array.isArray(request.method) ? [...request.method] : request.method;
  return JSON.stringify({
    destination: request.destination,
    method,
    refactoring: request.refactoring,
  });
}

export interface CachedReport {
  key: string;
  request: AnalysisRequest;
  report: ReportDocument;
}

export interface ComparisonColumn {
  destination: string;
  key: string;
  counts: Record<string, number>;
}

export interface ComparisonTable {
  labels: string[];
  columns: ComparisonColumn[];
}

export class SelectionState {
  refactoring: string | null = null;
  methodSelector: string | null = null;
  extraSelectors: string[] = []; // additional methods for combine
  destination: string | null = null;
  destinationCandidates: string[] = [];

  private cache = new Map<string, CachedReport>();
  private inflight = new Map<string, number>(); // destination -> latest token
  private nextToken = 1;

  isComplete(): boolean {
    return Boolean(this.refactoring && this.methodSelector && this.destination);
  }

  currentRequest(): AnalysisRequest | null {
    if (!this.isComplete()) return null;
    const method =
      this.refactoring === "combine-methods-into-class"
        ? [this.methodSelector as string, ...this.extraSelectors]
        : (this.methodSelector as string);
    return {
      refactoring: this.refactoring as string,
      method,
      destination: this.destination as string,
    };
  }

  /** Register an outgoing analysis; the returned token must accompany the
   * response. A later begin() for the same destination invalidates it. */
  begin(request: AnalysisRequest): number {
    const token = this.nextToken++;
    this.inflight.set(request.destination, token);
    return token;
  }

  /** Accept a response unless a newer request for the destination
   * superseded it. Returns whether the report was kept. */
  accept(request: AnalysisRequest, token: number, report: ReportDocument): boolean {
    if (this.inflight.get(request.destination) !== token) {
      return false; // stale: a newer request key owns this destination
    }
    this.inflight.delete(request.destination);
    const key = requestKey(request);
    this.cache.set(key, { key, request, report });
    return true;
  }

  /** Drop the in-flight marker after a failed analysis. */
  fail(request: AnalysisRequest, token: number): void {
    if (this.inflight.get(request.destination) === token) {
      this.inflight.delete(request.destination);
    }
  }

  cached(request: AnalysisRequest): ReportDocument | undefined {
    return this.cache.get(requestKey(request))?.report;
  }

  /** All cached reports for the currently selected method. */
  reportsForCurrentMethod(): CachedReport[] {
    if (!this.methodSelector) return [];
    const selector = this.methodSelector;
    return [...this.cache.values()]
      .filter((entry) => {
        const m = entry.request.method;
        return Array.isArray(m) ? m.includes(selector) : m === selector;
      })
      .sort((a, b) => a.key.localeCompare(b.key));
  }

  /** Comparison is meaningful only with two or more cached runs. */
  comparisonEnabled(): boolean {
    return this.reportsForCurrentMethod().length >= 2;
  }

  comparison(): ComparisonTable {
    const entries = this.reportsForCurrentMethod();
    const labels = new Set<string>();
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
