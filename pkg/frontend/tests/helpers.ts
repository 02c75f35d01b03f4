/** Test doubles: an in-memory service and a hand-cranked scheduler. */

import {
  AdvisorApi,
  Descriptor,
  LookPayload,
  Palette,
  PartitionSummary,
  PreferenceScore,
  Profile,
  RankFilter,
  RankedItem,
} from "../src/api.js";
import { Scheduler } from "../src/model.js";

export function makeColors(n = 8): PartitionSummary {
  const colors = [];
  for (let id = 0; id < n; id++) {
    const channel = Math.round((id / Math.max(1, n - 1)) * 255);
    colors.push({
      id,
      name: `shade ${id}`,
      achromatic: false,
      rgb: [channel, 64, 128] as [number, number, number],
      hex: "#4080a0",
    });
  }
  return { version: "test", colors };
}

/**
 * Plays the scoring service: stores profiles, answers preference requests
 * with a deterministic rule, and can hold responses back to simulate
 * slow, out-of-order replies.
 */
export class FakeApi implements AdvisorApi {
  profiles = new Map<string, Profile>();
  preferenceCalls: Array<{ look: LookPayload; userId: string | null }> = [];
  putCalls = 0;
  lastScore: PreferenceScore | null = null;
  scoreQueue: PreferenceScore[] = [];
  holdPreferences = false;
  private held: Array<() => void> = [];

  async getColors(): Promise<PartitionSummary> {
    return makeColors();
  }

  async putRatings(
    userId: string,
    ratings: Record<number, number>,
    defaultRating = 0.5,
  ): Promise<Profile> {
    this.putCalls += 1;
    const stored: Record<string, number> = {};
    for (const [cid, value] of Object.entries(ratings)) {
      stored[cid] = value;
    }
    const profile = { user_id: userId, default_rating: defaultRating, ratings: stored };
    this.profiles.set(userId, profile);
    return profile;
  }

  async getProfile(userId: string): Promise<Profile> {
    const profile = this.profiles.get(userId);
    if (!profile) {
      throw new Error(`no profile for ${userId}`);
    }
    return profile;
  }

  async computeDescriptor(_image: Blob): Promise<Descriptor> {
    return { entries: [{ id: 3, w: 1.0 }], width: 4, height: 4 };
  }

  private scoreFor(look: LookPayload, userId: string | null): PreferenceScore {
    if (this.scoreQueue.length > 0) {
      return this.scoreQueue.shift()!;
    }
    // deterministic play-server rule: harmony shrinks as looks grow
    const harmony = Math.max(0, 1 - 0.07 * look.items.length);
    if (userId === null) {
      return { value: harmony, components: { harmony }, matched_palette_id: 14 };
    }
    const profile = this.profiles.get(userId);
    const ratings = profile ? profile.ratings : {};
    let weightSum = 0;
    let acc = 0;
    for (const item of look.items) {
      const cid = item.color_id ?? item.descriptor?.entries[0]?.id ?? 0;
      const rating = ratings[String(cid)] ?? 0.5;
      acc += rating;
      weightSum += 1;
    }
    const weighted = weightSum ? acc / weightSum : 0.5;
    return {
      value: (weighted + harmony) / 2,
      components: { harmony, weighted_scp: weighted },
      matched_palette_id: 14,
    };
  }

  preference(look: LookPayload, userId: string | null): Promise<PreferenceScore> {
    this.preferenceCalls.push({ look, userId });
    const respond = () => {
      const score = this.scoreFor(look, userId);
      this.lastScore = score;
      return score;
    };
    if (this.holdPreferences) {
      return new Promise((resolve) => {
        this.held.push(() => resolve(respond()));
      });
    }
    return Promise.resolve(respond());
  }

  /** Release held preference responses in the given order (default FIFO). */
  releaseHeld(order?: number[]): void {
    const pending = this.held;
    this.held = [];
    const sequence = order ?? pending.map((_, k) => k);
    for (const idx of sequence) {
      pending[idx]?.();
    }
  }

  async rank(_anchor: LookPayload, _filter: RankFilter, _userId: string | null): Promise<RankedItem[]> {
    const mk = (id: string, value: number): RankedItem => ({
      item: {
        item_id: id,
        name: `item ${id}`,
        role: "shoes_bags",
        descriptor: { entries: [{ id: 1, w: 1 }] },
      },
      score: { value, components: { harmony: value }, matched_palette_id: null },
    });
    return [mk("a", 0.91), mk("b", 0.52)];
  }

  async palettes(label?: string): Promise<Palette[]> {
    const all: Palette[] = [
      { id: 14, member_count: 150, entries: [{ id: 1, w: 0.6 }, { id: 3, w: 0.4 }] },
      { id: 27, member_count: 130, entries: [{ id: 2, w: 1.0 }], label: "retro" },
    ];
    return label ? all.filter((p) => p.label === label) : all;
  }
}

/** Scheduler whose timers only fire when the test cranks them. */
export class ManualScheduler implements Scheduler {
  private pending = new Map<number, () => void>();
  private next = 1;

  set(fn: () => void, _ms: number): number {
    const id = this.next++;
    this.pending.set(id, fn);
    return id;
  }

  clear(id: number): void {
    this.pending.delete(id);
  }

  /** Fire every pending timer (new timers set while firing wait for the next crank). */
  crank(): void {
    const batch = [...this.pending.values()];
    this.pending.clear();
    for (const fn of batch) {
      fn();
    }
  }

  get pendingCount(): number {
    return this.pending.size;
  }
}

export async function settle(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await Promise.resolve();
}
