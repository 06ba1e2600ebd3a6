/**
 * Shared test plumbing: fixture loading and a stub fetch.
 *
 * Every fixture under tests/fixtures/ is a verbatim HTTP response body
 * captured from the backend, so assertions against them are assertions
 * about the real wire format.
 */

import { readFileSync } from 'node:fs';
import { resolve } from 'node:path';

export function fixtureRaw(name: string): string {
  // vitest runs from the package root; import.meta.url is virtual under jsdom
  return readFileSync(resolve(process.cwd(), 'tests/fixtures', name), 'utf8');
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureRaw(name)) as T;
}

export interface FetchCall {
  url: string;
  init: RequestInit | undefined;
}

/** A fetch stub that answers every request with `handler`'s return value. */
export function stubFetch(handler: (url: string, init?: RequestInit) => unknown): {
  impl: typeof fetch;
  calls: FetchCall[];
} {
  const calls: FetchCall[] = [];
  const impl = (async (input: unknown, init?: RequestInit) => {
    const url = String(input);
    calls.push({ url, init });
    const body = handler(url, init);
    return {
      ok: true,
      status: 200,
      json: async () => body,
    } as Response;
  }) as typeof fetch;
  return { impl, calls };
}

/** A fetch stub whose responses are resolved manually by the test. */
export interface PendingFetch {
  url: string;
  signal: AbortSignal | null | undefined;
  respond: (body: unknown) => void;
  fail: (err: unknown) => void;
}

export function deferredFetch(): { impl: typeof fetch; pending: PendingFetch[] } {
  const pending: PendingFetch[] = [];
  const impl = ((input: unknown, init?: RequestInit) =>
    new Promise<Response>((resolve, reject) => {
      pending.push({
        url: String(input),
        signal: init?.signal,
        respond: (body) =>
          resolve({ ok: true, status: 200, json: async () => body } as Response),
        fail: reject,
      });
    })) as typeof fetch;
  return { impl, pending };
}

/** Let queued promise callbacks and zero-delay timers run. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
