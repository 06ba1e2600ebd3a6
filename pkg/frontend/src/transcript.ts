/**
 * Scrolling transcript panel that follows playback: the cue under the
 * playhead is highlighted and kept in view.
 */

import { speakerColor } from './colors.js';
import { el, clear } from './dom.js';
import { fmtClock } from './format.js';
import type { TranscriptCue, TranscriptDoc } from './types.js';

/**
 * Earliest cue active at t (start ≤ t < end), matching the server's seek
 * semantics; null in silence. Binary search over start-sorted cues.
 */
export function activeCueAt(cues: TranscriptCue[], tMs: number): number | null {
  let lo = 0;
  let hi = cues.length - 1;
  let lastStarted = -1;
  while (lo <= hi) {
    const mid = (lo + hi) >> 1;
    if (cues[mid].start_ms <= tMs) {
      lastStarted = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  // Walk back over already-started cues; overlaps are rare and shallow,
  // and ties must resolve to the earliest-starting active cue.
  for (let k = 0; k <= lastStarted; k++) {
    if (cues[k].start_ms <= tMs && tMs < cues[k].end_ms) return k;
  }
  return null;
}

export class TranscriptPanel {
  private readonly items: HTMLElement[] = [];
  private activeIndex: number | null = null;

  constructor(
    container: HTMLElement,
    transcript: TranscriptDoc,
    private readonly speakerIndexOf: (speaker: string) => number,
    readonly onCueClick: ((cue: TranscriptCue) => void) | null = null,
  ) {
    clear(container);
    const list = el('ol', { class: 'transcript' });
    for (const cue of transcript.cues) {
      const item = el('li', { class: 'cue', 'data-cue': String(cue.index) }, [
        el('span', { class: 'cue-time' }, [fmtClock(cue.start_ms)]),
        el('span', {
          class: 'cue-speaker',
          style: `color:${speakerColor(this.speakerIndexOf(cue.speaker))}`,
        }, [cue.speaker]),
        el('span', { class: 'cue-text' }, [cue.text]),
      ]);
      if (onCueClick) {
        item.addEventListener('click', () => onCueClick(cue));
      }
      this.items.push(item);
      list.append(item);
    }
    container.append(list);
  }

  highlight(cueIndex: number | null): void {
    if (cueIndex === this.activeIndex) return;
    if (this.activeIndex !== null && this.items[this.activeIndex]) {
      this.items[this.activeIndex].classList.remove('active');
    }
    this.activeIndex = cueIndex;
    if (cueIndex !== null && this.items[cueIndex]) {
      const item = this.items[cueIndex];
      item.classList.add('active');
      // jsdom has no scrollIntoView; real browsers do
      item.scrollIntoView?.({ block: 'nearest', behavior: 'smooth' });
    }
  }
}
