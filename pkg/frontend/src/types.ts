/** Wire types mirroring the analysis service's JSON schemas. */

export interface SpanJson {
  file: string;
  line: number;
  col: number;
  end_line: number;
  end_col: number;
}

export interface ClassEntry {
  name: string;
  span?: SpanJson;
}

export interface MethodEntry {
  name: string;
  params: string[];
  return_type: string;
  visibility: string;
  static: boolean;
  abstract: boolean;
  selector: string;
  span?: SpanJson;
}

/** A danger location: either a real source span or a synthetic description. */
export interface LocationJson {
  file?: string;
  line?: number;
  col?: number;
  end_line?: number;
  end_col?: number;
  synthetic_desc?: string;
}

export interface DangerJson {
  label: string;
  detector: string;
  message: string;
  locations: LocationJson[];
  microstep: string;
}

export interface ReportDocument {
  refactoring: string;
  params: Record<string, unknown>;
  dangers: DangerJson[];
  summary: { per_label_counts: Record<string, number> };
  baseline_generation: number;
  diagnostics: string[];
}

export interface AnalysisRequest {
  refactoring: string;
  method: string | string[];
  destination: string;
}

export function isRealLocation(loc: LocationJson): loc is Required<Omit<LocationJson, "synthetic_desc">> {
  return loc.file !== undefined && loc.line !== undefined;
}
