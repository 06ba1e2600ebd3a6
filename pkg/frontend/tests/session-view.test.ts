import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { renderShareDonut } from '../src/charts/donut.js';
import { renderFlowGraph } from '../src/charts/flow.js';
import { speakerColor } from '../src/colors.js';
import {
  renderMetricsPanels,
  renderSessionView,
  speakerIndexLookup,
} from '../src/session-view.js';
import { renderSummaryCards } from '../src/summary.js';
import type {
  SessionMetrics,
  SessionRecord,
  SpeakerMetrics,
  TimelineTrack,
  TranscriptDoc,
} from '../src/types.js';
import { fixture, fixtureRaw, stubFetch } from './helpers.js';

const metrics = fixture<SessionMetrics>('golden_metrics.json');
const metricsRaw = fixtureRaw('golden_metrics.json');
const tracks = fixture<TimelineTrack[]>('golden_timeline.json');
const indexOf = speakerIndexLookup(tracks);

function makeSpeaker(speaker: string, share: number, speakingMs: number): SpeakerMetrics {
  return {
    speaker,
    speaking_ms: speakingMs,
    share,
    floor_turn_count: 1,
    backchannel_count: 0,
    mean_floor_turn_ms: speakingMs,
    longest_floor_turn_ms: speakingMs,
    word_count: 10,
    words_per_minute: 60,
    filled_pause_count: 0,
    long_pauses_after: 0,
    language_ms: { fr: speakingMs, en: 0, unknown: 0 },
  };
}

function makeMetrics(speakers: [string, number, number][]): SessionMetrics {
  const per_speaker: Record<string, SpeakerMetrics> = {};
  for (const [name, share, ms] of speakers) {
    per_speaker[name] = makeSpeaker(name, share, ms);
  }
  return {
    per_speaker,
    flow: {
      speakers: speakers.map(([name]) => name),
      counts: speakers.map(() => speakers.map(() => 0)),
    },
    total_speaking_ms: speakers.reduce((acc, [, , ms]) => acc + ms, 0),
    session_duration_ms: 60_000,
    long_pause_count: 0,
    config_used: metrics.config_used,
  };
}

describe('verbatim rendering of server metrics', () => {
  it('every numeric label in the session panels appears verbatim in the API payload', () => {
    const panels = renderMetricsPanels(metrics, indexOf);
    const labels = [
      ...panels.querySelectorAll('.stat-value, .legend-value, .edge-label'),
    ].map((node) => node.textContent ?? '');

    expect(labels.length).toBeGreaterThan(40);
    for (const text of labels) {
      expect(text).not.toBe('');
      // String(x) of a parsed JSON number reproduces the payload's digits,
      // so the rendered text must literally occur in the response body.
      expect(metricsRaw).toContain(text);
    }
  });

  it('shows the exact share, duration, and speaking time from the fixture', () => {
    const panels = renderMetricsPanels(metrics, indexOf);

    const legendValue = panels.querySelector(
      'li[data-speaker="Aoife Byrne"] .legend-value[data-field="share"]',
    );
    expect(legendValue?.textContent).toBe('0.28211432083589427');

    const duration = panels.querySelector('.session-card .stat-value[data-field="session_duration_ms"]');
    expect(duration?.textContent).toBe('191700');

    const speaking = panels.querySelector(
      '.speaker-card[data-speaker="Aoife Byrne"] .stat-value[data-field="speaking_ms"]',
    );
    expect(speaking?.textContent).toBe('45900');
  });

  it('renders one summary card per speaker, in roster order', () => {
    const cards = renderSummaryCards(metrics, indexOf);
    expect(cards.querySelectorAll('.session-card')).toHaveLength(1);
    const speakerCards = [...cards.querySelectorAll('.speaker-card')];
    const rosterOrder = Object.keys(metrics.per_speaker).sort(
      (a, b) => indexOf(a) - indexOf(b),
    );
    expect(speakerCards.map((c) => c.getAttribute('data-speaker'))).toEqual(rosterOrder);
    expect(speakerCards[0].getAttribute('data-speaker')).toBe('Aoife Byrne');
    expect(speakerCards.at(-1)?.getAttribute('data-speaker')).toBe('?');
  });
});

describe('share donut', () => {
  it('draws one slice per speaker, coloured by speaker_index', () => {
    const donut = renderShareDonut(metrics, indexOf);
    const slices = [...donut.querySelectorAll('svg [data-speaker]')];
    expect(slices).toHaveLength(Object.keys(metrics.per_speaker).length);
    for (const slice of slices) {
      const speaker = slice.getAttribute('data-speaker') ?? '';
      expect(slice.getAttribute('fill')).toBe(speakerColor(indexOf(speaker)));
    }
  });

  it('gives two equal shares two half-circle slices', () => {
    const donut = renderShareDonut(makeMetrics([['A', 0.5, 5000], ['B', 0.5, 5000]]), (s) =>
      s === 'A' ? 0 : 1,
    );
    const paths = [...donut.querySelectorAll('svg path')];
    expect(paths).toHaveLength(2);
    // equal slices split the ring at 12 and 6 o'clock
    expect(paths[0].getAttribute('d')).toContain('M 110.00 10.00');
    expect(paths[0].getAttribute('d')).toContain('110.00 210.00');
    expect(paths[1].getAttribute('d')).toContain('M 110.00 210.00');
    expect(paths[1].getAttribute('d')).toContain('110.00 10.00');
  });

  it('draws a lone speaker as a full ring', () => {
    const donut = renderShareDonut(makeMetrics([['Solo', 1.0, 9000]]), () => 0);
    expect(donut.querySelectorAll('svg path')).toHaveLength(0);
    expect(donut.querySelectorAll('svg circle[data-speaker="Solo"]')).toHaveLength(1);
  });

  it('shows an empty state when nobody spoke', () => {
    const donut = renderShareDonut(makeMetrics([['A', 0, 0]]), () => 0);
    expect(donut.querySelector('svg')).toBeNull();
    expect(donut.querySelector('.empty-state')?.textContent).toBe('No speech in this session.');
  });
});

describe('flow graph', () => {
  const nonzero: { from: string; to: string; count: number }[] = [];
  metrics.flow.counts.forEach((row, i) =>
    row.forEach((count, j) => {
      if (count > 0) {
        nonzero.push({ from: metrics.flow.speakers[i], to: metrics.flow.speakers[j], count });
      }
    }),
  );

  it('draws one edge per nonzero matrix entry with the exact count', () => {
    const graph = renderFlowGraph(metrics.flow, indexOf);
    const edges = [...graph.querySelectorAll('.flow-edge')];
    expect(edges).toHaveLength(nonzero.length);

    for (const { from, to, count } of nonzero) {
      const edge = graph.querySelector(`.flow-edge[data-from="${from}"][data-to="${to}"]`);
      expect(edge, `${from} -> ${to}`).not.toBeNull();
      expect(edge?.getAttribute('data-count')).toBe(String(count));
    }

    const labelTexts = [...graph.querySelectorAll('.edge-label')].map((l) => l.textContent);
    expect(labelTexts.sort()).toEqual(nonzero.map((e) => String(e.count)).sort());
  });

  it('keeps self-transitions visible as loops', () => {
    const graph = renderFlowGraph(metrics.flow, indexOf);
    const selfEdges = [...graph.querySelectorAll('.flow-edge.flow-self')];
    const diagonal = nonzero.filter((e) => e.from === e.to);
    expect(selfEdges).toHaveLength(diagonal.length);
    expect(diagonal.length).toBeGreaterThan(0); // the golden session has one
    for (const edge of selfEdges) {
      expect(edge.tagName.toLowerCase()).toBe('circle');
    }
  });

  it('colours nodes by speaker_index', () => {
    const graph = renderFlowGraph(metrics.flow, indexOf);
    for (const speaker of metrics.flow.speakers) {
      const node = graph.querySelector(`.flow-node[data-speaker="${speaker}"]`);
      expect(node?.getAttribute('fill')).toBe(speakerColor(indexOf(speaker)));
    }
  });

  it('shows an empty state when the matrix is all zeros', () => {
    const graph = renderFlowGraph({ speakers: ['A', 'B'], counts: [[0, 0], [0, 0]] }, () => 0);
    expect(graph.querySelector('svg')).toBeNull();
    expect(graph.querySelector('.empty-state')?.textContent).toBe('No floor exchanges to draw.');
  });
});

describe('full session view', () => {
  it('composes charts, timeline, transcript, and a no-recording notice', () => {
    const record = fixture<SessionRecord>('golden_session.json');
    const transcript = fixture<TranscriptDoc>('golden_transcript.json');
    const { impl } = stubFetch(() => ({}));
    const api = new ApiClient('http://api.test', impl);
    const container = document.createElement('div');
    document.body.append(container);

    renderSessionView(container, api, record, metrics, tracks, transcript);

    expect(container.querySelector('[data-chart="share"]')).not.toBeNull();
    expect(container.querySelector('[data-chart="flow"]')).not.toBeNull();
    expect(container.querySelector('[data-chart="summary"]')).not.toBeNull();
    expect(container.querySelector('svg.timeline')).not.toBeNull();
    expect(container.querySelectorAll('.transcript li.cue')).toHaveLength(transcript.cues.length);
    // the golden session was stored without media
    expect(container.querySelector('.no-media')).not.toBeNull();
    expect(container.querySelector('video')).toBeNull();
    container.remove();
  });
});
