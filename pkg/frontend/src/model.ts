/**
 * Application state for the advisor: current user, single-color ratings,
 * the look under construction, its live score, and ranked suggestions.
 *
 * Scores come exclusively from the service. Look edits are debounced so
 * each user action issues exactly one preference request, and responses
 * carry monotonically increasing ids so a stale reply can never
 * overwrite a newer score.
 */

import {
  AdvisorApi,
  Descriptor,
  LookPayload,
  Palette,
  PartitionColor,
  PreferenceScore,
  RankFilter,
  RankedItem,
  Role,
} from "./api.js";
import { clampRating } from "./format.js";

export interface LookItemState {
  role: Role;
  colorId?: number;
  descriptor?: Descriptor;
  label: string;
}

export interface Scheduler {
  set(fn: () => void, ms: number): number;
  clear(id: number): void;
}

const realScheduler: Scheduler = {
  set: (fn, ms) => setTimeout(fn, ms) as unknown as number,
  clear: (id) => clearTimeout(id),
};

export type Listener = () => void;

export interface ModelOptions {
  debounceMs?: number;
  scheduler?: Scheduler;
}

export class AdvisorModel {
  colors: PartitionColor[] = [];
  userId: string | null = null; // null = guest
  ratings = new Map<number, number>();
  look: LookItemState[] = [];
  score: PreferenceScore | null = null;
  scorePending = false;
  suggestions: RankedItem[] = [];
  palettes: Palette[] = [];
  lastError: string | null = null;

  /** Total preference requests issued; tests watch this. */
  preferenceRequests = 0;

  private listeners: Listener[] = [];
  private debounceMs: number;
  private scheduler: Scheduler;
  private debounceHandle: number | null = null;
  private requestSeq = 0;
  private appliedSeq = 0;

  constructor(
    private api: AdvisorApi,
    options: ModelOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 150;
    this.scheduler = options.scheduler ?? realScheduler;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  colorById(id: number): PartitionColor | undefined {
    return this.colors.find((c) => c.id === id);
  }

  async loadColors(): Promise<void> {
    const summary = await this.api.getColors();
    this.colors = summary.colors;
    this.emit();
  }

  // -- identity and ratings ------------------------------------------------

  get isGuest(): boolean {
    return this.userId === null;
  }

  async signIn(userId: string): Promise<void> {
    this.userId = userId;
    this.ratings.clear();
    try {
      const profile = await this.api.getProfile(userId);
      for (const [cid, value] of Object.entries(profile.ratings)) {
        this.ratings.set(Number(cid), value);
      }
    } catch {
      // new user: no stored profile yet
    }
    this.emit();
    this.scheduleScore();
  }

  signOut(): void {
    this.userId = null;
    this.ratings.clear();
    this.emit();
    this.scheduleScore();
  }

  async setRating(colorId: number, value: number): Promise<void> {
    if (this.userId === null) {
      throw new Error("guests cannot store ratings");
    }
    this.ratings.set(colorId, clampRating(value));
    await this.persistRatings();
    this.emit();
    this.scheduleScore();
  }

  private async persistRatings(): Promise<void> {
    if (this.userId === null) {
      return;
    }
    const payload: Record<number, number> = {};
    for (const [cid, value] of this.ratings) {
      payload[cid] = value;
    }
    await this.api.putRatings(this.userId, payload);
  }

  // -- look building ---------------------------------------------------------

  addColorItem(role: Role, colorId: number): void {
    const color = this.colorById(colorId);
    this.look.push({ role, colorId, label: color ? color.name : `color ${colorId}` });
    this.emit();
    this.scheduleScore();
  }

  async addImageItem(role: Role, image: Blob, name: string): Promise<void> {
    const descriptor = await this.api.computeDescriptor(image);
    this.look.push({ role, descriptor, label: name });
    this.emit();
    this.scheduleScore();
  }

  removeItem(index: number): void {
    if (index < 0 || index >= this.look.length) {
      return;
    }
    this.look.splice(index, 1);
    this.emit();
    this.scheduleScore();
  }

  clearLook(): void {
    this.look = [];
    this.score = null;
    this.suggestions = [];
    this.emit();
  }

  lookPayload(): LookPayload {
    return {
      items: this.look.map((item) =>
        item.colorId !== undefined
          ? { role: item.role, color_id: item.colorId }
          : { role: item.role, descriptor: item.descriptor },
      ),
    };
  }

  // -- scoring ---------------------------------------------------------------

  /** Collapse bursts of edits into a single preference request. */
  scheduleScore(): void {
    if (this.look.length === 0) {
      this.score = null;
      this.scorePending = false;
      this.emit();
      return;
    }
    this.scorePending = true;
    if (this.debounceHandle !== null) {
      this.scheduler.clear(this.debounceHandle);
    }
    this.debounceHandle = this.scheduler.set(() => {
      this.debounceHandle = null;
      void this.requestScore();
    }, this.debounceMs);
    this.emit();
  }

  async requestScore(): Promise<void> {
    if (this.look.length === 0) {
      return;
    }
    const seq = ++this.requestSeq;
    this.preferenceRequests += 1;
    try {
      const score = await this.api.preference(this.lookPayload(), this.userId);
      if (seq <= this.appliedSeq) {
        return; // a newer response already landed
      }
      this.appliedSeq = seq;
      this.score = score;
      this.scorePending = false;
      this.lastError = null;
    } catch (err) {
      if (seq > this.appliedSeq) {
        this.scorePending = false;
        this.lastError = err instanceof Error ? err.message : String(err);
      }
    }
    this.emit();
  }

  /** Force any pending debounce to fire now (used by tests and unload). */
  flushScore(): Promise<void> {
    if (this.debounceHandle !== null) {
      this.scheduler.clear(this.debounceHandle);
      this.debounceHandle = null;
      return this.requestScore();
    }
    return Promise.resolve();
  }

  // -- suggestions and palettes ----------------------------------------------

  async loadSuggestions(filter: RankFilter = {}): Promise<void> {
    if (this.look.length === 0) {
      this.suggestions = [];
      this.emit();
      return;
    }
    try {
      this.suggestions = await this.api.rank(this.lookPayload(), filter, this.userId);
      this.lastError = null;
    } catch (err) {
      this.suggestions = [];
      this.lastError = err instanceof Error ? err.message : String(err);
    }
    this.emit();
  }

  async loadPalettes(label?: string): Promise<void> {
    this.palettes = await this.api.palettes(label);
    this.emit();
  }
}
