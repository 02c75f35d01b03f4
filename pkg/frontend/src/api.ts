/**
 * Typed client for the colorharmony HTTP API. The UI never computes
 * scores itself; every number on screen comes from these calls.
 */

export type Role = "dress_costume" | "up_down" | "shoes_bags" | "accessory";

export const ROLE_WEIGHTS: Record<Role, number> = {
  dress_costume: 1.0,
  up_down: 0.75,
  shoes_bags: 0.5,
  accessory: 0.25,
};

export const ROLE_LABELS: Record<Role, string> = {
  dress_costume: "Dress / costume",
  up_down: "Top / bottom",
  shoes_bags: "Shoes / bag",
  accessory: "Accessory",
};

export interface PartitionColor {
  id: number;
  name: string;
  achromatic: boolean;
  rgb: [number, number, number];
  hex: string;
}

export interface PartitionSummary {
  version: string;
  colors: PartitionColor[];
}

export interface DescriptorEntry {
  id: number;
  w: number;
}

export interface Descriptor {
  entries: DescriptorEntry[];
  width?: number;
  height?: number;
}

export interface Profile {
  user_id: string;
  default_rating: number;
  ratings: Record<string, number>;
}

export interface ScoreComponents {
  harmony: number;
  weighted_scp?: number;
}

export interface PreferenceScore {
  value: number;
  components: ScoreComponents;
  matched_palette_id: number | null;
}

export interface Palette {
  id: number;
  member_count: number;
  entries: DescriptorEntry[];
  label?: string;
}

export interface CatalogItem {
  item_id: string;
  name: string;
  role: Role;
  descriptor: Descriptor;
  image_path?: string;
  label?: string;
}

export interface RankedItem {
  item: CatalogItem;
  score: PreferenceScore;
}

export interface LookItemPayload {
  role: Role;
  color_id?: number;
  descriptor?: Descriptor;
}

export interface LookPayload {
  items: LookItemPayload[];
}

export interface RankFilter {
  role?: Role;
  label?: string;
  limit?: number;
}

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

/** Surface the model layer depends on; tests substitute a fake. */
export interface AdvisorApi {
  getColors(): Promise<PartitionSummary>;
  putRatings(userId: string, ratings: Record<number, number>, defaultRating?: number): Promise<Profile>;
  getProfile(userId: string): Promise<Profile>;
  computeDescriptor(image: Blob): Promise<Descriptor>;
  preference(look: LookPayload, userId: string | null): Promise<PreferenceScore>;
  rank(anchor: LookPayload, filter: RankFilter, userId: string | null): Promise<RankedItem[]>;
  palettes(label?: string): Promise<Palette[]>;
}

async function parseError(response: Response): Promise<never> {
  let code = "internal";
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body?.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body: keep the status line
  }
  throw new ApiError(code, message, response.status);
}

export class HttpAdvisorApi implements AdvisorApi {
  constructor(
    private baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      await parseError(response);
    }
    return (await response.json()) as T;
  }

  private json<T>(path: string, method: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getColors(): Promise<PartitionSummary> {
    return this.request("/api/colors");
  }

  putRatings(
    userId: string,
    ratings: Record<number, number>,
    defaultRating = 0.5,
  ): Promise<Profile> {
    return this.json(`/api/users/${encodeURIComponent(userId)}/ratings`, "PUT", {
      ratings,
      default_rating: defaultRating,
    });
  }

  getProfile(userId: string): Promise<Profile> {
    return this.request(`/api/users/${encodeURIComponent(userId)}`);
  }

  async computeDescriptor(image: Blob): Promise<Descriptor> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/descriptor`, {
      method: "POST",
      body: image,
    });
    if (!response.ok) {
      await parseError(response);
    }
    return (await response.json()) as Descriptor;
  }

  preference(look: LookPayload, userId: string | null): Promise<PreferenceScore> {
    const body: Record<string, unknown> = { look };
    if (userId !== null) {
      body.user_id = userId;
    }
    return this.json("/api/preference", "POST", body);
  }

  rank(anchor: LookPayload, filter: RankFilter, userId: string | null): Promise<RankedItem[]> {
    const body: Record<string, unknown> = { anchor, ...filter };
    if (userId !== null) {
      body.user_id = userId;
    }
    return this.json("/api/rank", "POST", body);
  }

  palettes(label?: string): Promise<Palette[]> {
    const query = label ? `?label=${encodeURIComponent(label)}` : "";
    return this.request(`/api/palettes${query}`);
  }
}
