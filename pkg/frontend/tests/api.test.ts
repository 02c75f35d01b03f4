import { describe, expect, it } from "vitest";

import { ApiError, HttpAdvisorApi } from "../src/api.js";

type Call = { url: string; init?: RequestInit };

function stubFetch(status: number, body: unknown) {
  const calls: Call[] = [];
  const impl = (async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => body,
    } as Response;
  }) as unknown as typeof fetch;
  return { impl, calls };
}

describe("HttpAdvisorApi", () => {
  it("puts ratings to the user endpoint", async () => {
    const { impl, calls } = stubFetch(200, { user_id: "x", default_rating: 0.5, ratings: {} });
    const api = new HttpAdvisorApi("http://svc", impl);
    await api.putRatings("x", { 12: 0.8 });
    expect(calls[0]?.url).toBe("http://svc/api/users/x/ratings");
    expect(calls[0]?.init?.method).toBe("PUT");
    const sent = JSON.parse(String(calls[0]?.init?.body));
    expect(sent.ratings["12"]).toBe(0.8);
    expect(sent.default_rating).toBe(0.5);
  });

  it("omits user_id for guests", async () => {
    const { impl, calls } = stubFetch(200, {
      value: 1, components: { harmony: 1 }, matched_palette_id: null,
    });
    const api = new HttpAdvisorApi("http://svc", impl);
    await api.preference({ items: [{ role: "accessory", color_id: 1 }] }, null);
    const sent = JSON.parse(String(calls[0]?.init?.body));
    expect("user_id" in sent).toBe(false);
  });

  it("sends user_id when signed in", async () => {
    const { impl, calls } = stubFetch(200, {
      value: 0.8, components: { harmony: 1, weighted_scp: 0.6 }, matched_palette_id: 3,
    });
    const api = new HttpAdvisorApi("http://svc", impl);
    await api.preference({ items: [{ role: "accessory", color_id: 1 }] }, "alice");
    const sent = JSON.parse(String(calls[0]?.init?.body));
    expect(sent.user_id).toBe("alice");
  });

  it("maps service errors onto ApiError", async () => {
    const { impl } = stubFetch(400, {
      error: { code: "bad_request", message: "rating out of range" },
    });
    const api = new HttpAdvisorApi("http://svc", impl);
    await expect(api.putRatings("x", { 3: 1.5 })).rejects.toMatchObject({
      code: "bad_request",
      status: 400,
    });
    await expect(api.putRatings("x", { 3: 1.5 })).rejects.toBeInstanceOf(ApiError);
  });

  it("encodes the palette label filter", async () => {
    const { impl, calls } = stubFetch(200, []);
    const api = new HttpAdvisorApi("http://svc", impl);
    await api.palettes("retro chic");
    expect(calls[0]?.url).toBe("http://svc/api/palettes?label=retro%20chic");
  });

  it("posts raw blob bytes for descriptors", async () => {
    const { impl, calls } = stubFetch(200, { entries: [{ id: 1, w: 1 }] });
    const api = new HttpAdvisorApi("http://svc", impl);
    const blob = new Blob([new Uint8Array([1, 2, 3])]);
    await api.computeDescriptor(blob);
    expect(calls[0]?.url).toBe("http://svc/api/descriptor");
    expect(calls[0]?.init?.body).toBe(blob);
    expect(calls[0]?.init?.method).toBe("POST");
  });
});
