/** Sequence-numbered gate: a response is applied only if its request is the
 * most recently issued one, so stale what-if responses are never rendered. */

export class LatestGate {
  private lastIssued = 0;

  issue(): number {
    return ++this.lastIssued;
  }

  isCurrent(seq: number): boolean {
    return seq === this.lastIssued;
  }
}
