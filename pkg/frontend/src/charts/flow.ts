/**
 * Turn-taking flow as a directed graph: speakers on a circle, one curved
 * edge per nonzero matrix entry, stroke width proportional to the count,
 * self-loops drawn as little circles so diagonal entries stay visible.
 */

import { speakerColor } from '../colors.js';
import { el, svgEl } from '../dom.js';
import { exact } from '../format.js';
import type { FlowMatrix } from '../types.js';

const SIZE = 320;
const RING = 110;
const NODE_R = 26;
const LOOP_R = 20;

interface NodePos {
  x: number;
  y: number;
  angle: number;
}

function nodePositions(n: number): NodePos[] {
  const cx = SIZE / 2;
  const cy = SIZE / 2;
  return Array.from({ length: n }, (_, k) => {
    const angle = (2 * Math.PI * k) / n - Math.PI / 2;
    return { x: cx + RING * Math.cos(angle), y: cy + RING * Math.sin(angle), angle };
  });
}

function edgeWidth(count: number, maxCount: number): number {
  return 1.5 + 6 * (count / Math.max(1, maxCount));
}

export function renderFlowGraph(
  flow: FlowMatrix,
  speakerIndexOf: (speaker: string) => number,
): HTMLElement {
  const container = el('div', { class: 'flow-chart', 'data-chart': 'flow' });
  container.append(el('h3', {}, ['Conversation flow']));

  const n = flow.speakers.length;
  const totalTransitions = flow.counts.flat().reduce((a, b) => a + b, 0);
  if (n === 0 || totalTransitions === 0) {
    container.append(el('p', { class: 'empty-state' }, ['No floor exchanges to draw.']));
    return container;
  }

  const svg = svgEl('svg', {
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    width: String(SIZE),
    height: String(SIZE),
    role: 'img',
    'aria-label': 'who followed whom',
  });

  const defs = svgEl('defs');
  defs.append(
    svgEl('marker', {
      id: 'flow-arrow',
      viewBox: '0 -4 8 8',
      refX: '8',
      refY: '0',
      markerWidth: '7',
      markerHeight: '7',
      orient: 'auto',
    }, [svgEl('path', { d: 'M0,-4L8,0L0,4', fill: '#4b5563' })]),
  );
  svg.append(defs);

  const positions = nodePositions(n);
  const maxCount = Math.max(...flow.counts.flat());

  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const count = flow.counts[i][j];
      if (count === 0) continue;

      if (i === j) {
        // Self-loop: a small circle hanging off the node, away from centre.
        const p = positions[i];
        const lx = p.x + (LOOP_R + NODE_R - 6) * Math.cos(p.angle);
        const ly = p.y + (LOOP_R + NODE_R - 6) * Math.sin(p.angle);
        svg.append(
          svgEl('circle', {
            cx: String(lx.toFixed(2)),
            cy: String(ly.toFixed(2)),
            r: String(LOOP_R),
            fill: 'none',
            stroke: '#4b5563',
            'stroke-width': String(edgeWidth(count, maxCount).toFixed(2)),
            class: 'flow-edge flow-self',
            'data-from': flow.speakers[i],
            'data-to': flow.speakers[j],
            'data-count': String(count),
          }),
        );
        svg.append(
          svgEl('text', {
            x: String((lx + (LOOP_R + 9) * Math.cos(p.angle)).toFixed(2)),
            y: String((ly + (LOOP_R + 9) * Math.sin(p.angle)).toFixed(2)),
            class: 'edge-label',
            'text-anchor': 'middle',
            'dominant-baseline': 'middle',
          }, [exact(count)]),
        );
        continue;
      }

      // Curved edge bowed to the right of travel, so A→B and B→A separate.
      const a = positions[i];
      const b = positions[j];
      const mx = (a.x + b.x) / 2;
      const my = (a.y + b.y) / 2;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const len = Math.hypot(dx, dy) || 1;
      const bow = 22;
      const cxp = mx + (dy / len) * bow;
      const cyp = my - (dx / len) * bow;
      // Trim the endpoints to the node circles' rims.
      const trim = (from: NodePos, toX: number, toY: number) => {
        const ddx = toX - from.x;
        const ddy = toY - from.y;
        const d = Math.hypot(ddx, ddy) || 1;
        return { x: from.x + (ddx / d) * NODE_R, y: from.y + (ddy / d) * NODE_R };
      };
      const start = trim(a, cxp, cyp);
      const endFull = trim(b, cxp, cyp);

      svg.append(
        svgEl('path', {
          d: `M ${start.x.toFixed(2)} ${start.y.toFixed(2)} Q ${cxp.toFixed(2)} ${cyp.toFixed(2)} ${endFull.x.toFixed(2)} ${endFull.y.toFixed(2)}`,
          fill: 'none',
          stroke: '#4b5563',
          'stroke-width': String(edgeWidth(count, maxCount).toFixed(2)),
          'marker-end': 'url(#flow-arrow)',
          class: 'flow-edge',
          'data-from': flow.speakers[i],
          'data-to': flow.speakers[j],
          'data-count': String(count),
        }),
      );
      svg.append(
        svgEl('text', {
          x: String(cxp.toFixed(2)),
          y: String(cyp.toFixed(2)),
          class: 'edge-label',
          'text-anchor': 'middle',
          'dominant-baseline': 'middle',
        }, [exact(count)]),
      );
    }
  }

  for (let i = 0; i < n; i++) {
    const p = positions[i];
    const speaker = flow.speakers[i];
    svg.append(
      svgEl('circle', {
        cx: String(p.x.toFixed(2)),
        cy: String(p.y.toFixed(2)),
        r: String(NODE_R),
        fill: speakerColor(speakerIndexOf(speaker)),
        class: 'flow-node',
        'data-speaker': speaker,
      }),
    );
    svg.append(
      svgEl('text', {
        x: String(p.x.toFixed(2)),
        y: String(p.y.toFixed(2)),
        class: 'node-label',
        'text-anchor': 'middle',
        'dominant-baseline': 'middle',
      }, [initials(speaker)]),
    );
  }

  svg.append(svgEl('title', {}, ['edge label = how many times the pointed-at speaker took the floor next']));
  container.append(svg);
  return container;
}

function initials(name: string): string {
  if (name === '?') return '?';
  return name
    .split(/\s+/)
    .filter(Boolean)
    .map((part) => part[0]!.toUpperCase())
    .slice(0, 2)
    .join('');
}
