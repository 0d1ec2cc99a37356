/** Span-to-offset math for source highlighting.
 *
 * Report spans are 1-based and inclusive on both ends; this converts them
 * to half-open character offsets into the raw file text. Getting the
 * boundaries exactly right matters: a danger at line 1, column 1 must
 * highlight the very first character.
 */

import type { SpanJson } from "./types.js";

export interface OffsetRange {
  start: number;
  end: number; // exclusive
}

function offsetOf(lineStarts: number[], line: number, col: number): number {
  const lineIndex = Math.min(Math.max(line - 1, 0), lineStarts.length - 1);
  return lineStarts[lineIndex] + (col - 1);
}

export function lineStartOffsets(text: string): number[] {
  const starts = [0];
  for (let i = 0; i < text.length; i++) {
    if (text[i] === "\n") starts.push(i + 1);
  }
  return starts;
}

export function spanToOffsets(text: string, span: SpanJson): OffsetRange {
  const starts = lineStartOffsets(text);
  const start = offsetOf(starts, span.line, span.col);
  const end = offsetOf(starts, span.end_line, span.end_col) + 1;
  return { start: Math.min(start, text.length), end: Math.min(Math.max(end, start), text.length) };
}

/** The exact text a span covers; what the UI must visually mark. */
export function spanText(text: string, span: SpanJson): string {
  const range = spanToOffsets(text, span);
  return text.slice(range.start, range.end);
}
