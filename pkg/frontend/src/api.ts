/**
 * Thin typed client for the talkflow HTTP API. Every method maps 1:1 to a
 * documented endpoint; nothing is recomputed client-side.
 */

import type {
  ApiErrorBody,
  Cohort,
  ProgressionReport,
  SeekResult,
  SessionMetrics,
  SessionRecord,
  TimelineTrack,
  TranscriptDoc,
} from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly code: ApiErrorBody['code'];
  readonly detail: unknown;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.status = body.status;
    this.code = body.code;
    this.detail = body.detail;
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let body: ApiErrorBody;
    try {
      body = (await response.json()) as ApiErrorBody;
    } catch {
      body = {
        status: response.status,
        code: 'internal',
        message: `HTTP ${response.status}`,
        detail: null,
      };
    }
    throw new ApiError(body);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, '') + path;
  }

  private get<T>(path: string, init?: RequestInit): Promise<T> {
    return this.fetchImpl(this.url(path), init).then((r) => asJson<T>(r));
  }

  listCohorts(): Promise<Cohort[]> {
    return this.get('/cohorts');
  }

  getCohort(cohortId: string): Promise<Cohort> {
    return this.get(`/cohorts/${encodeURIComponent(cohortId)}`);
  }

  getSession(sessionId: string): Promise<SessionRecord> {
    return this.get(`/sessions/${encodeURIComponent(sessionId)}`);
  }

  getMetrics(sessionId: string): Promise<SessionMetrics> {
    return this.get(`/sessions/${encodeURIComponent(sessionId)}/metrics`);
  }

  getTimeline(sessionId: string): Promise<TimelineTrack[]> {
    return this.get(`/sessions/${encodeURIComponent(sessionId)}/timeline`);
  }

  getTranscript(sessionId: string): Promise<TranscriptDoc> {
    return this.get(`/sessions/${encodeURIComponent(sessionId)}/transcript`);
  }

  seek(sessionId: string, tMs: number, signal?: AbortSignal): Promise<SeekResult> {
    const t = Math.max(0, Math.round(tMs));
    return this.get(`/sessions/${encodeURIComponent(sessionId)}/seek?t=${t}`, { signal });
  }

  getProgression(cohortId: string, participantId: string): Promise<ProgressionReport> {
    return this.get(
      `/cohorts/${encodeURIComponent(cohortId)}/participants/${encodeURIComponent(participantId)}/progression`,
    );
  }

  /** URL for the media element's src; the server honours Range requests. */
  mediaUrl(sessionId: string): string {
    return this.url(`/sessions/${encodeURIComponent(sessionId)}/media`);
  }
}
