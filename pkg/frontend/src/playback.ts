/**
 * Glue between the timeline, the transcript panel, and the media element:
 * timeline clicks become server seeks, the returned offset positions the
 * player, and during playback the cursor and the highlighted cue follow.
 */

import type { ApiClient } from './api.js';
import { SeekGate } from './seek-gate.js';
import { activeCueAt } from './transcript.js';
import type { TranscriptPanel } from './transcript.js';
import type { TimelineView } from './timeline.js';
import type { SeekResult, TranscriptCue } from './types.js';

/** The slice of HTMLMediaElement playback control actually uses. */
export interface MediaLike {
  currentTime: number;
  play(): unknown;
  addEventListener(type: 'timeupdate', listener: () => void): void;
}

export class PlaybackController {
  private readonly gate: SeekGate<SeekResult>;

  constructor(
    api: ApiClient,
    private readonly sessionId: string,
    private readonly media: MediaLike | null,
    private readonly timeline: TimelineView,
    private readonly transcriptPanel: TranscriptPanel,
    private readonly cues: TranscriptCue[],
    private readonly onPositionChange: ((tMs: number) => void) | null = null,
  ) {
    this.gate = new SeekGate((tMs, signal) => api.seek(this.sessionId, tMs, signal));

    timeline.onSeekRequest = (tMs) => {
      void this.seekTo(tMs);
    };
    if (this.media) {
      this.media.addEventListener('timeupdate', () => {
        this.followPosition(this.media!.currentTime * 1000);
      });
    }
  }

  /** Ask the server where playback should land for instant tMs, then go there. */
  async seekTo(tMs: number): Promise<SeekResult | null> {
    const result = await this.gate.request(tMs);
    if (result === null) return null; // a later click won
    if (this.media) {
      this.media.currentTime = result.offset_ms / 1000;
      this.media.play();
    }
    this.followPosition(result.offset_ms);
    return result;
  }

  /** Move the cursor and the highlighted cue to a playback position. */
  followPosition(tMs: number): void {
    this.timeline.setPlaybackPosition(tMs);
    this.transcriptPanel.highlight(activeCueAt(this.cues, tMs));
    this.onPositionChange?.(tMs);
  }
}
