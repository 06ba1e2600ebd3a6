/**
 * Conversation-share donut: one slice per speaker, slice value = the
 * server-computed share. The legend shows the exact share values; the arc
 * geometry is the only place the numbers are "used" rather than displayed.
 */

import { speakerColor } from '../colors.js';
import { el, svgEl } from '../dom.js';
import { exact } from '../format.js';
import type { SessionMetrics } from '../types.js';

const SIZE = 220;
const RADIUS = 100;
const HOLE = 62;

interface Slice {
  speaker: string;
  share: number;
  color: string;
}

function arcPath(startAngle: number, endAngle: number): string {
  // Angles in radians from 12 o'clock, clockwise; annulus sector path.
  const cx = SIZE / 2;
  const cy = SIZE / 2;
  const point = (r: number, a: number) => ({
    x: cx + r * Math.sin(a),
    y: cy - r * Math.cos(a),
  });
  const p0 = point(RADIUS, startAngle);
  const p1 = point(RADIUS, endAngle);
  const p2 = point(HOLE, endAngle);
  const p3 = point(HOLE, startAngle);
  const large = endAngle - startAngle > Math.PI ? 1 : 0;
  return [
    `M ${p0.x.toFixed(2)} ${p0.y.toFixed(2)}`,
    `A ${RADIUS} ${RADIUS} 0 ${large} 1 ${p1.x.toFixed(2)} ${p1.y.toFixed(2)}`,
    `L ${p2.x.toFixed(2)} ${p2.y.toFixed(2)}`,
    `A ${HOLE} ${HOLE} 0 ${large} 0 ${p3.x.toFixed(2)} ${p3.y.toFixed(2)}`,
    'Z',
  ].join(' ');
}

export function renderShareDonut(
  metrics: SessionMetrics,
  speakerIndexOf: (speaker: string) => number,
): HTMLElement {
  const container = el('div', { class: 'share-chart', 'data-chart': 'share' });
  container.append(el('h3', {}, ['Conversation share']));

  // roster order, not the JSON document's alphabetical key order
  const slices: Slice[] = Object.values(metrics.per_speaker)
    .sort((a, b) => speakerIndexOf(a.speaker) - speakerIndexOf(b.speaker))
    .map((sm) => ({
      speaker: sm.speaker,
      share: sm.share,
      color: speakerColor(speakerIndexOf(sm.speaker)),
    }));

  if (metrics.total_speaking_ms === 0 || slices.length === 0) {
    container.append(el('p', { class: 'empty-state' }, ['No speech in this session.']));
    return container;
  }

  const svg = svgEl('svg', {
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    width: String(SIZE),
    height: String(SIZE),
    role: 'img',
    'aria-label': 'conversation share by speaker',
  });

  const full = 2 * Math.PI;
  let angle = 0;
  for (const slice of slices) {
    const sweep = slice.share * full;
    if (sweep <= 0) continue;
    // A lone speaker owns the whole ring; a single path can't draw it.
    if (sweep >= full - 1e-9) {
      svg.append(
        svgEl('circle', {
          cx: String(SIZE / 2),
          cy: String(SIZE / 2),
          r: String((RADIUS + HOLE) / 2),
          fill: 'none',
          stroke: slice.color,
          'stroke-width': String(RADIUS - HOLE),
          'data-speaker': slice.speaker,
        }),
      );
      break;
    }
    svg.append(
      svgEl('path', {
        d: arcPath(angle, angle + sweep),
        fill: slice.color,
        'data-speaker': slice.speaker,
      }),
    );
    angle += sweep;
  }
  container.append(svg);

  const legend = el('ul', { class: 'legend' });
  for (const slice of slices) {
    legend.append(
      el('li', { 'data-speaker': slice.speaker }, [
        el('span', { class: 'swatch', style: `background:${slice.color}` }),
        el('span', { class: 'legend-name' }, [slice.speaker]),
        el('span', { class: 'legend-value', 'data-field': 'share' }, [exact(slice.share)]),
      ]),
    );
  }
  container.append(legend);
  return container;
}
