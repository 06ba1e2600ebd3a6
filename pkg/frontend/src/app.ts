/**
 * Application shell: hash routing between the session view and the weekly
 * progression view, plus the little pickers that drive both.
 *
 * Routes:
 *   #/session/<session_id>
 *   #/progression/<cohort_id>/<participant_id>
 */

import { ApiClient, ApiError } from './api.js';
import { renderProgression } from './charts/progression.js';
import { el, clear } from './dom.js';
import { renderSessionView } from './session-view.js';
import type { ViewState } from './types.js';

function parseHash(hash: string): Partial<ViewState> & { cohortId?: string; participantId?: string } {
  const parts = hash.replace(/^#\/?/, '').split('/').filter(Boolean);
  if (parts[0] === 'session' && parts[1]) {
    return { activeView: 'session', selectedSession: decodeURIComponent(parts[1]) };
  }
  if (parts[0] === 'progression' && parts[1] && parts[2]) {
    return {
      activeView: 'progression',
      cohortId: decodeURIComponent(parts[1]),
      participantId: decodeURIComponent(parts[2]),
    };
  }
  return {};
}

function errorBanner(err: unknown): HTMLElement {
  const message =
    err instanceof ApiError
      ? `${err.code}: ${err.detail}`
      : err instanceof Error
        ? err.message
        : String(err);
  return el('p', { class: 'error-banner', role: 'alert' }, [message]);
}

export class App {
  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private readonly main: HTMLElement;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
    this.main = el('main', { class: 'app-main' });

    const sessionInput = el('input', {
      type: 'text',
      placeholder: 'session id',
      'aria-label': 'session id',
    }) as HTMLInputElement;
    const openSession = el('button', { type: 'button' }, ['Open session']);
    openSession.addEventListener('click', () => {
      const id = sessionInput.value.trim();
      if (id) window.location.hash = `#/session/${encodeURIComponent(id)}`;
    });

    const progressionInput = el('input', {
      type: 'text',
      placeholder: 'cohort/participant',
      'aria-label': 'cohort and participant',
    }) as HTMLInputElement;
    const openProgression = el('button', { type: 'button' }, ['Open progression']);
    openProgression.addEventListener('click', () => {
      const [cohort, participant] = progressionInput.value.trim().split('/');
      if (cohort && participant) {
        window.location.hash = `#/progression/${encodeURIComponent(cohort)}/${encodeURIComponent(participant)}`;
      }
    });

    this.root.append(
      el('nav', { class: 'app-nav' }, [
        el('h1', {}, ['Talkflow']),
        el('span', { class: 'nav-group' }, [sessionInput, openSession]),
        el('span', { class: 'nav-group' }, [progressionInput, openProgression]),
      ]),
      this.main,
    );

    window.addEventListener('hashchange', () => void this.route());
  }

  async route(): Promise<void> {
    const state = parseHash(window.location.hash);
    clear(this.main);
    try {
      if (state.activeView === 'session' && state.selectedSession) {
        await this.showSession(state.selectedSession);
      } else if (state.activeView === 'progression' && state.cohortId && state.participantId) {
        await this.showProgression(state.cohortId, state.participantId);
      } else {
        this.main.append(
          el('p', { class: 'empty-state' }, [
            'Open a session by id, or a progression as cohort/participant.',
          ]),
        );
      }
    } catch (err) {
      clear(this.main);
      this.main.append(errorBanner(err));
    }
  }

  private async showSession(sessionId: string): Promise<void> {
    const [record, metrics, timeline, transcript] = await Promise.all([
      this.api.getSession(sessionId),
      this.api.getMetrics(sessionId),
      this.api.getTimeline(sessionId),
      this.api.getTranscript(sessionId),
    ]);
    renderSessionView(this.main, this.api, record, metrics, timeline, transcript);
  }

  private async showProgression(cohortId: string, participantId: string): Promise<void> {
    const report = await this.api.getProgression(cohortId, participantId);
    this.main.append(renderProgression(report));
  }
}
