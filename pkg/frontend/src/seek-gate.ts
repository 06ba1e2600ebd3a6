/**
 * At most one seek request in flight: a later click aborts the earlier
 * request, so playback lands where the user clicked last, not where the
 * network answered last.
 */

export class SeekGate<T> {
  private inflight: AbortController | null = null;

  constructor(private readonly run: (tMs: number, signal: AbortSignal) => Promise<T>) {}

  /** Resolves with the result, or null when superseded by a later request. */
  async request(tMs: number): Promise<T | null> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const result = await this.run(tMs, controller.signal);
      return controller.signal.aborted ? null : result;
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
      }
    }
  }
}
