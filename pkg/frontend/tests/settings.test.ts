import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { SettingsView } from "../src/settings.js";
import { CRITERIA, type UserModel } from "../src/types.js";
import { jsonResponse } from "./helpers.js";

function defaultModel(userId = "u1"): UserModel {
  const prefs = {} as UserModel["warning_prefs"];
  for (const criterion of CRITERIA) {
    prefs[criterion] = { enabled: true, sensitivity: "normal" };
  }
  return {
    user_id: userId,
    interests: ["health"],
    domain_knowledge: {},
    digital_literacy: "intermediate",
    warning_prefs: prefs,
  };
}

describe("SettingsView", () => {
  let container: HTMLElement;

  beforeEach(() => {
    container = document.createElement("div");
    document.body.appendChild(container);
  });

  afterEach(() => {
    container.remove();
    vi.unstubAllGlobals();
  });

  it("renders the stored model into the form", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse(defaultModel())));
    const view = new SettingsView(new ApiClient("http://service"), container, "u1", () => {});
    await view.render();

    const literacy = container.querySelector<HTMLSelectElement>('select[name="digital_literacy"]');
    expect(literacy?.value).toBe("intermediate");
    expect(container.querySelectorAll(".settings__criterion").length).toBe(7);
  });

  it("submits a PATCH with the edited preferences and notifies", async () => {
    const calls: Array<{ url: string; init?: RequestInit }> = [];
    vi.stubGlobal(
      "fetch",
      vi.fn(async (url: string, init?: RequestInit) => {
        calls.push({ url, init });
        if (init?.method === "PATCH") {
          return jsonResponse({ ...defaultModel(), digital_literacy: "expert" });
        }
        return jsonResponse(defaultModel());
      }),
    );
    const onSaved = vi.fn();
    const view = new SettingsView(new ApiClient("http://service"), container, "u1", onSaved);
    await view.render();

    const literacy = container.querySelector<HTMLSelectElement>('select[name="digital_literacy"]');
    literacy!.value = "expert";
    const toneEnabled = container.querySelector<HTMLInputElement>('input[name="tone.enabled"]');
    toneEnabled!.checked = false;

    container.querySelector("form")?.dispatchEvent(new Event("submit", { cancelable: true }));
    await vi.waitFor(() => expect(onSaved).toHaveBeenCalledTimes(1));

    const patch = calls.find((c) => c.init?.method === "PATCH");
    expect(patch).toBeDefined();
    const body = JSON.parse(String(patch!.init!.body));
    expect(body.digital_literacy).toBe("expert");
    expect(body.warning_prefs.tone.enabled).toBe(false);
    expect(body.warning_prefs.writing_quality.enabled).toBe(true);
  });

  it("surfaces validation errors inline without notifying", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async (_url: string, init?: RequestInit) => {
        if (init?.method === "PATCH") {
          return jsonResponse({ error: "unknown sensitivity: 'max'" }, 400);
        }
        return jsonResponse(defaultModel());
      }),
    );
    const onSaved = vi.fn();
    const view = new SettingsView(new ApiClient("http://service"), container, "u1", onSaved);
    await view.render();

    container.querySelector("form")?.dispatchEvent(new Event("submit", { cancelable: true }));
    await vi.waitFor(() => {
      const error = container.querySelector<HTMLElement>(".form-error");
      expect(error?.hidden).toBe(false);
    });
    expect(container.querySelector(".form-error")?.textContent).toContain("sensitivity");
    expect(onSaved).not.toHaveBeenCalled();
  });
});
