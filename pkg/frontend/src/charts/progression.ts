/**
 * Weekly progression: small multiples (share / floor turns / filled pauses),
 * one marker per stored week and a signed delta label between consecutive
 * points. A missing week breaks the line — absence is shown, not
 * interpolated.
 */

import { el, svgEl } from '../dom.js';
import { exact } from '../format.js';
import type { ProgressionPoint, ProgressionReport } from '../types.js';

const WIDTH = 420;
const HEIGHT = 150;
const PAD = { left: 56, right: 16, top: 26, bottom: 26 };

interface Measure {
  key: 'share' | 'floor_turn_count' | 'filled_pause_count';
  title: string;
}

const MEASURES: Measure[] = [
  { key: 'share', title: 'Conversation share' },
  { key: 'floor_turn_count', title: 'Floor turns' },
  { key: 'filled_pause_count', title: 'Filled pauses' },
];

function panel(report: ProgressionReport, measure: Measure): HTMLElement {
  const points = report.points;
  const container = el('div', { class: 'progression-panel', 'data-measure': measure.key });
  container.append(el('h4', {}, [measure.title]));

  if (points.length === 0) {
    container.append(el('p', { class: 'empty-state' }, ['No stored weeks yet.']));
    return container;
  }

  const weeks = points.map((p) => p.week_number);
  const values = points.map((p) => p[measure.key]);
  const weekMin = Math.min(...weeks);
  const weekMax = Math.max(...weeks);
  const valueMax = Math.max(...values, 0);
  const valueMin = Math.min(...values, 0);
  const plotW = WIDTH - PAD.left - PAD.right;
  const plotH = HEIGHT - PAD.top - PAD.bottom;

  const x = (week: number) =>
    PAD.left + (weekMax === weekMin ? plotW / 2 : ((week - weekMin) / (weekMax - weekMin)) * plotW);
  const y = (value: number) =>
    PAD.top + (valueMax === valueMin ? plotH / 2 : ((valueMax - value) / (valueMax - valueMin)) * plotH);

  const svg = svgEl('svg', {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    role: 'img',
    'aria-label': `${measure.title} by week`,
  });

  // line segments only between adjacent stored weeks — gaps stay gaps
  for (let k = 1; k < points.length; k++) {
    const a = points[k - 1];
    const b = points[k];
    if (b.week_number - a.week_number !== 1) continue;
    svg.append(
      svgEl('line', {
        x1: String(x(a.week_number).toFixed(2)),
        y1: String(y(a[measure.key]).toFixed(2)),
        x2: String(x(b.week_number).toFixed(2)),
        y2: String(y(b[measure.key]).toFixed(2)),
        class: 'series-line',
      }),
    );
  }

  points.forEach((point) => {
    svg.append(
      svgEl('circle', {
        cx: String(x(point.week_number).toFixed(2)),
        cy: String(y(point[measure.key]).toFixed(2)),
        r: '4',
        class: 'series-point',
        'data-week': String(point.week_number),
        'data-value': exact(point[measure.key]),
      }),
    );
    svg.append(
      svgEl('text', {
        x: String(x(point.week_number).toFixed(2)),
        y: String(HEIGHT - 8),
        class: 'axis-tick',
        'text-anchor': 'middle',
        'data-week-label': String(point.week_number),
      }, [`w${point.week_number}`]),
    );
  });

  // a delta label above the midpoint of each consecutive pair of points
  report.deltas.forEach((delta: ProgressionPoint, k: number) => {
    const a = points[k];
    const b = points[k + 1];
    if (!a || !b) return;
    const midX = (x(a.week_number) + x(b.week_number)) / 2;
    const midY = Math.min(y(a[measure.key]), y(b[measure.key])) - 8;
    const value = delta[measure.key];
    svg.append(
      svgEl('text', {
        x: String(midX.toFixed(2)),
        y: String(Math.max(midY, 10).toFixed(2)),
        class: `delta-label ${value >= 0 ? 'delta-up' : 'delta-down'}`,
        'text-anchor': 'middle',
        'data-delta-index': String(k),
      }, [value >= 0 ? `+${exact(value)}` : exact(value)]),
    );
  });

  svg.append(
    svgEl('text', {
      x: String(PAD.left - 8),
      y: String(y(valueMax).toFixed(2)),
      class: 'axis-tick',
      'text-anchor': 'end',
      'dominant-baseline': 'middle',
    }, [exact(valueMax)]),
  );

  container.append(svg);
  return container;
}

export function renderProgression(report: ProgressionReport): HTMLElement {
  const container = el('div', { class: 'progression', 'data-chart': 'progression' });
  container.append(el('h3', {}, [`Weekly progression — ${report.participant_id}`]));
  for (const measure of MEASURES) {
    container.append(panel(report, measure));
  }
  return container;
}
