/**
 * The per-session review surface: share donut, flow graph, summary cards,
 * timeline with playback, and the following transcript.
 */

import type { ApiClient } from './api.js';
import { renderShareDonut } from './charts/donut.js';
import { renderFlowGraph } from './charts/flow.js';
import { el, clear } from './dom.js';
import { PlaybackController } from './playback.js';
import type { MediaLike } from './playback.js';
import { renderSummaryCards } from './summary.js';
import { TimelineView } from './timeline.js';
import { TranscriptPanel } from './transcript.js';
import type { SessionMetrics, SessionRecord, TimelineTrack, TranscriptDoc } from './types.js';

/**
 * speaker → speaker_index as the server assigned it (timeline tracks carry
 * the authoritative indices; colours must follow them).
 */
export function speakerIndexLookup(tracks: TimelineTrack[]): (speaker: string) => number {
  const indices = new Map(tracks.map((t) => [t.speaker, t.speaker_index]));
  return (speaker) => indices.get(speaker) ?? -1;
}

/** Render only the metric visuals (no playback); used by tests and the app. */
export function renderMetricsPanels(
  metrics: SessionMetrics,
  speakerIndexOf: (speaker: string) => number,
): HTMLElement {
  const panels = el('div', { class: 'metrics-panels' });
  panels.append(renderShareDonut(metrics, speakerIndexOf));
  panels.append(renderFlowGraph(metrics.flow, speakerIndexOf));
  panels.append(renderSummaryCards(metrics, speakerIndexOf));
  return panels;
}

export interface SessionViewParts {
  timeline: TimelineView;
  transcriptPanel: TranscriptPanel;
  playback: PlaybackController;
}

export function renderSessionView(
  container: HTMLElement,
  api: ApiClient,
  record: SessionRecord,
  metrics: SessionMetrics,
  tracks: TimelineTrack[],
  transcript: TranscriptDoc,
  mediaFactory?: (src: string) => MediaLike, // test seam; defaults to <video>
): SessionViewParts {
  clear(container);
  const speakerIndexOf = speakerIndexLookup(tracks);

  container.append(
    el('header', { class: 'session-header' }, [
      el('h2', {}, [`${record.cohort_id} / ${record.group_id} — week ${record.week_number}`]),
      el('p', { class: 'session-sub' }, [`recorded ${record.recorded_at}`]),
    ]),
  );
  container.append(renderMetricsPanels(metrics, speakerIndexOf));

  let media: MediaLike | null = null;
  const playerSlot = el('div', { class: 'player-slot' });
  if (record.media_path) {
    const src = api.mediaUrl(record.session_id);
    if (mediaFactory) {
      media = mediaFactory(src);
    } else {
      const video = document.createElement('video');
      video.controls = true;
      video.preload = 'metadata';
      video.src = src;
      playerSlot.append(video);
      media = video;
    }
  } else {
    playerSlot.append(
      el('p', { class: 'empty-state no-media' }, ['No recording attached to this session.']),
    );
  }
  container.append(playerSlot);

  const timelineSlot = el('div', { class: 'timeline-slot' });
  container.append(timelineSlot);
  const timeline = new TimelineView(timelineSlot, tracks, transcript.duration_ms);

  const transcriptSlot = el('div', { class: 'transcript-slot' });
  container.append(transcriptSlot);

  let playback: PlaybackController;
  const transcriptPanel = new TranscriptPanel(
    transcriptSlot,
    transcript,
    speakerIndexOf,
    (cue) => void playback.seekTo(cue.start_ms),
  );

  playback = new PlaybackController(
    api,
    record.session_id,
    media,
    timeline,
    transcriptPanel,
    transcript.cues,
  );

  return { timeline, transcriptPanel, playback };
}
