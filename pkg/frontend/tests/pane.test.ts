import { describe, expect, it } from "vitest";

import { renderIconPane } from "../src/pane.js";
import { CRITERIA } from "../src/types.js";
import { makePresentation } from "./helpers.js";

describe("renderIconPane", () => {
  it("renders the seven criterion icons in order", () => {
    const pane = renderIconPane(makePresentation());
    const icons = [...pane.querySelectorAll(".icon")];
    expect(icons.map((el) => el.getAttribute("data-criterion"))).toEqual([...CRITERIA]);
  });

  it("maps icon states to colours and symbols", () => {
    const pane = renderIconPane(
      makePresentation("red_caution", {
        writing_quality: "red_caution",
        tone: "grey_unavailable",
      }),
    );
    const wq = pane.querySelector('[data-criterion="writing_quality"]');
    expect(wq?.classList.contains("icon--red")).toBe(true);
    expect(wq?.querySelector(".icon__symbol")?.textContent).toBe("!");

    const tone = pane.querySelector('[data-criterion="tone"]');
    expect(tone?.classList.contains("icon--grey")).toBe(true);

    const ts = pane.querySelector('[data-criterion="text_similarity"]');
    expect(ts?.classList.contains("icon--green")).toBe(true);
    expect(ts?.querySelector(".icon__symbol")?.textContent).toBe("✓");
  });

  it("expander reveals the detail text verbatim and toggles closed", () => {
    const presentation = makePresentation();
    const pane = renderIconPane(presentation);
    const cell = pane.querySelector('[data-criterion="writing_quality"]');
    const expander = cell?.querySelector<HTMLElement>(".icon__expander");
    const detail = cell?.querySelector<HTMLElement>(".detail-pane");

    expect(detail?.hidden).toBe(true);
    expander?.click();
    expect(detail?.hidden).toBe(false);
    expect(detail?.querySelector(".detail-pane__text")?.textContent).toBe(
      presentation.icons.writing_quality.detail_text,
    );
    expander?.click();
    expect(detail?.hidden).toBe(true);
  });

  it("every icon carries its own detail pane", () => {
    const pane = renderIconPane(makePresentation());
    expect(pane.querySelectorAll(".detail-pane").length).toBe(7);
  });
});
