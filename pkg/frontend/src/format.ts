/**
 * Display rules.
 *
 * Metric values are rendered verbatim — `exact()` is the only way numbers
 * from the API reach the session view's text, so what the user reads is
 * byte-for-byte what the server computed. Clock formatting is reserved for
 * time axes and the transcript panel, which show positions, not metrics.
 */

export function exact(value: number): string {
  return String(value);
}

export function fmtClock(ms: number): string {
  const totalSeconds = Math.floor(ms / 1000);
  const h = Math.floor(totalSeconds / 3600);
  const m = Math.floor((totalSeconds % 3600) / 60);
  const s = totalSeconds % 60;
  const mmss = `${String(m).padStart(2, '0')}:${String(s).padStart(2, '0')}`;
  return h > 0 ? `${h}:${mmss}` : mmss;
}
