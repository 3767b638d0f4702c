import { CRITERIA, type Icon, type IconState, type Presentation } from "../src/types.js";

export function makeIcon(state: IconState, label = "Tone"): Icon {
  return {
    state,
    short_label: label,
    summary_text: `${label}: summary`,
    detail_text: `${label} detail text\nwith a second line`,
  };
}

export function makePresentation(
  badge: Presentation["badge"] = "blue_ok",
  overrides: Partial<Record<(typeof CRITERIA)[number], IconState>> = {},
): Presentation {
  const icons = {} as Presentation["icons"];
  for (const criterion of CRITERIA) {
    icons[criterion] = makeIcon(overrides[criterion] ?? "green_pass", criterion);
  }
  return { badge, icons };
}

export function presentationResponse(presentation: Presentation): object {
  return {
    schema_version: "1",
    generated_at: "2026-08-10T00:00:00+00:00",
    url: "https://example.com",
    user_id: "u",
    presentation,
  };
}

export function jsonResponse(payload: object, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
