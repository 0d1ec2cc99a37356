/** Wire types mirroring the analysis service's JSON schemas. */
export function isRealLocation(loc) {
    return loc.file !== undefined && loc.line !== undefined;
}
