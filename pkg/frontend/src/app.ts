import { ApiClient, ApiError } from './api.js';
import {
  UiState,
  headCandidate,
  initialState,
  mergeEnabled,
  withError,
  withServerTruth,
} from './state.js';
import type { ExportPayload } from './types.js';

const QUEUE_LIMIT = 25;

/** Controller: one API call per user action, then a full re-sync so the
 * view always shows server truth. DOM-free for testability. */
export class App {
  state: UiState = initialState();

  constructor(
    private readonly client: ApiClient,
    private readonly onChange: (state: UiState) => void = () => {},
  ) {}

  private emit(state: UiState): void {
    this.state = state;
    this.onChange(state);
  }

  async refresh(): Promise<void> {
    const [session, candidates] = await Promise.all([
      this.client.session(),
      this.client.candidates(QUEUE_LIMIT),
    ]);
    this.emit(withServerTruth(this.state, session, candidates));
  }

  private async mutate(action: string, call: () => Promise<unknown>): Promise<boolean> {
    if (this.state.busy) return false;
    this.emit({ ...this.state, busy: true });
    try {
      await call();
    } catch (err) {
      const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
      this.emit(withError({ ...this.state, busy: false }, message));
      return false;
    }
    this.emit({ ...this.state, busy: false, lastAction: action, mergeOpen: false });
    await this.refresh();
    return true;
  }

  accept(): Promise<boolean> {
    const head = headCandidate(this.state);
    if (!head) return Promise.resolve(false);
    return this.mutate(`accepted "${head.display_form}"`, () =>
      this.client.decide(head.phrase, 'accept'),
    );
  }

  block(): Promise<boolean> {
    const head = headCandidate(this.state);
    if (!head) return Promise.resolve(false);
    return this.mutate(`blocked "${head.display_form}"`, () =>
      this.client.decide(head.phrase, 'block'),
    );
  }

  openMergePicker(): void {
    if (mergeEnabled(this.state)) {
      this.emit({ ...this.state, mergeOpen: true });
    }
  }

  closeMergePicker(): void {
    this.emit({ ...this.state, mergeOpen: false });
  }

  merge(target: string): Promise<boolean> {
    const head = headCandidate(this.state);
    if (!head) return Promise.resolve(false);
    return this.mutate(`merged "${head.display_form}" into "${target}"`, () =>
      this.client.decide(head.phrase, 'merge', target),
    );
  }

  undo(): Promise<boolean> {
    return this.mutate('undid last decision', () => this.client.undo());
  }

  exportTopics(): Promise<ExportPayload> {
    return this.client.exportTopics();
  }

  /** Keyboard shortcuts for rapid triage. Returns true when handled. */
  handleKey(key: string): boolean {
    switch (key) {
      case 'a':
        void this.accept();
        return true;
      case 'b':
        void this.block();
        return true;
      case 'm':
        this.openMergePicker();
        return true;
      case 'u':
        void this.undo();
        return true;
      default:
        return false;
    }
  }
}
