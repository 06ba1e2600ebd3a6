/**
 * Summary cards: one per speaker plus one for the whole session. Every
 * number is the API's value rendered verbatim via exact() — the dashboard
 * never rounds or recomputes a metric.
 */

import { speakerColor } from './colors.js';
import { el } from './dom.js';
import { exact } from './format.js';
import type { SessionMetrics, SpeakerMetrics } from './types.js';

function row(label: string, field: string, value: number): HTMLElement {
  return el('div', { class: 'stat-row' }, [
    el('span', { class: 'stat-label' }, [label]),
    el('span', { class: 'stat-value', 'data-field': field }, [exact(value)]),
  ]);
}

function speakerCard(sm: SpeakerMetrics, index: number): HTMLElement {
  return el('article', { class: 'card speaker-card', 'data-speaker': sm.speaker }, [
    el('header', { style: `border-top: 4px solid ${speakerColor(index)}` }, [
      el('h4', {}, [sm.speaker]),
    ]),
    row('floor turns', 'floor_turn_count', sm.floor_turn_count),
    row('backchannels', 'backchannel_count', sm.backchannel_count),
    row('words / min', 'words_per_minute', sm.words_per_minute),
    row('words', 'word_count', sm.word_count),
    row('filled pauses', 'filled_pause_count', sm.filled_pause_count),
    row('long pauses after', 'long_pauses_after', sm.long_pauses_after),
    row('speaking ms', 'speaking_ms', sm.speaking_ms),
    row('french ms', 'language_ms.fr', sm.language_ms.fr),
    row('english ms', 'language_ms.en', sm.language_ms.en),
    row('unclassified ms', 'language_ms.unknown', sm.language_ms.unknown),
  ]);
}

export function renderSummaryCards(
  metrics: SessionMetrics,
  speakerIndexOf: (speaker: string) => number,
): HTMLElement {
  const container = el('section', { class: 'summary-cards', 'data-chart': 'summary' });
  container.append(
    el('article', { class: 'card session-card' }, [
      el('header', {}, [el('h4', {}, ['Session'])]),
      row('total speaking ms', 'total_speaking_ms', metrics.total_speaking_ms),
      row('duration ms', 'session_duration_ms', metrics.session_duration_ms),
      row('long pauses', 'long_pause_count', metrics.long_pause_count),
    ]),
  );
  const roster = Object.values(metrics.per_speaker).sort(
    (a, b) => speakerIndexOf(a.speaker) - speakerIndexOf(b.speaker),
  );
  for (const sm of roster) {
    container.append(speakerCard(sm, speakerIndexOf(sm.speaker)));
  }
  return container;
}
