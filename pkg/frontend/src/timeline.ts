/**
 * Colour-coded per-speaker timeline with a playback cursor.
 *
 * The pixel↔time mapping is linear and invertible to within one pixel's
 * worth of milliseconds; clicking anywhere requests a seek at the mapped
 * instant (the decision of where playback actually lands belongs to the
 * server's seek endpoint).
 */

import { speakerColor } from './colors.js';
import { el, svgEl, clear } from './dom.js';
import { fmtClock } from './format.js';
import type { TimelineTrack } from './types.js';

export const TRACK_HEIGHT = 26;
export const TRACK_GAP = 6;
export const LABEL_WIDTH = 140;
const AXIS_HEIGHT = 22;

export function msToPx(tMs: number, durationMs: number, widthPx: number): number {
  if (durationMs <= 0) return 0;
  return (tMs / durationMs) * widthPx;
}

export function pxToMs(x: number, durationMs: number, widthPx: number): number {
  if (widthPx <= 0) return 0;
  const t = Math.round((x / widthPx) * durationMs);
  return Math.min(Math.max(t, 0), durationMs);
}

export class TimelineView {
  private readonly root: HTMLElement;
  private readonly cursor: SVGLineElement;
  private readonly plotWidth: number;
  private readonly durationMs: number;

  onSeekRequest: ((tMs: number) => void) | null = null;

  constructor(
    container: HTMLElement,
    tracks: TimelineTrack[],
    durationMs: number,
    widthPx = 720,
  ) {
    this.durationMs = durationMs;
    this.plotWidth = widthPx;
    clear(container);

    const height = tracks.length * (TRACK_HEIGHT + TRACK_GAP) + AXIS_HEIGHT;
    const svg = svgEl('svg', {
      viewBox: `0 0 ${LABEL_WIDTH + widthPx} ${height}`,
      width: String(LABEL_WIDTH + widthPx),
      height: String(height),
      class: 'timeline',
      role: 'img',
      'aria-label': 'speaking timeline',
    });

    tracks.forEach((track, rowIndex) => {
      const y = rowIndex * (TRACK_HEIGHT + TRACK_GAP);
      svg.append(
        svgEl('text', {
          x: String(LABEL_WIDTH - 8),
          y: String(y + TRACK_HEIGHT / 2),
          'text-anchor': 'end',
          'dominant-baseline': 'middle',
          class: 'track-label',
        }, [track.speaker]),
      );
      svg.append(
        svgEl('rect', {
          x: String(LABEL_WIDTH),
          y: String(y),
          width: String(widthPx),
          height: String(TRACK_HEIGHT),
          class: 'track-bed',
        }),
      );
      for (const segment of track.segments) {
        const x0 = msToPx(segment.start_ms, durationMs, widthPx);
        const x1 = msToPx(segment.end_ms, durationMs, widthPx);
        svg.append(
          svgEl('rect', {
            x: String((LABEL_WIDTH + x0).toFixed(2)),
            y: String(segment.kind === 'backchannel' ? y + TRACK_HEIGHT / 4 : y),
            width: String(Math.max(x1 - x0, 1).toFixed(2)),
            height: String(segment.kind === 'backchannel' ? TRACK_HEIGHT / 2 : TRACK_HEIGHT),
            fill: speakerColor(track.speaker_index),
            opacity: segment.kind === 'backchannel' ? '0.55' : '1',
            class: `segment segment-${segment.kind}`,
            'data-speaker': track.speaker,
            'data-start': String(segment.start_ms),
            'data-end': String(segment.end_ms),
            'data-kind': segment.kind,
          }),
        );
      }
    });

    // time axis: a tick every minute, or every 10s for short sessions
    const axisY = tracks.length * (TRACK_HEIGHT + TRACK_GAP) + 14;
    const step = durationMs > 180_000 ? 60_000 : 10_000;
    for (let t = 0; t <= durationMs; t += step) {
      svg.append(
        svgEl('text', {
          x: String((LABEL_WIDTH + msToPx(t, durationMs, widthPx)).toFixed(2)),
          y: String(axisY),
          class: 'axis-tick',
          'text-anchor': 'middle',
        }, [fmtClock(t)]),
      );
    }

    this.cursor = svgEl('line', {
      x1: String(LABEL_WIDTH),
      x2: String(LABEL_WIDTH),
      y1: '0',
      y2: String(height - AXIS_HEIGHT),
      class: 'playback-cursor',
      'pointer-events': 'none',
    });
    svg.append(this.cursor);

    svg.addEventListener('click', (event) => {
      const rect = svg.getBoundingClientRect();
      // svg is rendered 1:1 with its viewBox, so client offsets are svg units
      const x = event.clientX - rect.left - LABEL_WIDTH;
      if (x < 0 || x > this.plotWidth) return;
      this.onSeekRequest?.(pxToMs(x, this.durationMs, this.plotWidth));
    });

    container.append(svg);
    this.root = container;
  }

  setPlaybackPosition(tMs: number): void {
    const clamped = Math.min(Math.max(tMs, 0), this.durationMs);
    const x = LABEL_WIDTH + msToPx(clamped, this.durationMs, this.plotWidth);
    this.cursor.setAttribute('x1', String(x.toFixed(2)));
    this.cursor.setAttribute('x2', String(x.toFixed(2)));
  }

  get element(): HTMLElement {
    return this.root;
  }
}
