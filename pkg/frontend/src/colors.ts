/**
 * Speaker colours are a pure function of speaker_index, so a participant
 * keeps their colour across sessions and weeks (the server assigns indices
 * by cohort roster position).
 */

const PALETTE = [
  '#2563eb', // blue
  '#dc2626', // red
  '#16a34a', // green
  '#d97706', // amber
  '#9333ea', // violet
  '#0891b2', // cyan
  '#db2777', // pink
  '#65a30d', // lime
];

export function speakerColor(speakerIndex: number): string {
  if (!Number.isInteger(speakerIndex) || speakerIndex < 0) {
    return '#6b7280'; // neutral grey for anything out of contract
  }
  if (speakerIndex < PALETTE.length) {
    return PALETTE[speakerIndex];
  }
  // Deterministic spill-over beyond the fixed palette: golden-angle hue walk.
  const hue = Math.round((speakerIndex * 137.508) % 360);
  return `hsl(${hue} 65% 45%)`;
}
