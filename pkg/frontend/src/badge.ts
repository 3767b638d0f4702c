import type { BadgeState } from "./types.js";

// Caution is never conveyed by colour alone: the red badge always
// carries a text exclamation mark for colour-blind users.

const BADGE_CLASS: Record<BadgeState, string> = {
  blue_ok: "badge--blue",
  red_caution: "badge--red",
  grey_unknown: "badge--grey",
};

const BADGE_TITLE: Record<BadgeState, string> = {
  blue_ok: "Verified: no warnings",
  red_caution: "Caution: one or more checks flagged this content",
  grey_unknown: "Not analysed",
};

export function renderBadge(state: BadgeState, onRetry?: () => void): HTMLElement {
  const badge = document.createElement("button");
  badge.type = "button";
  badge.className = `provenance-badge ${BADGE_CLASS[state]}`;
  badge.title = BADGE_TITLE[state];
  badge.setAttribute("data-badge-state", state);

  const letter = document.createElement("span");
  letter.className = "badge__letter";
  letter.textContent = "P";
  badge.appendChild(letter);

  if (state === "red_caution") {
    const exclaim = document.createElement("span");
    exclaim.className = "badge__exclaim";
    exclaim.textContent = "!";
    exclaim.setAttribute("aria-label", "caution");
    badge.appendChild(exclaim);
  }

  if (state === "grey_unknown" && onRetry) {
    const retry = document.createElement("span");
    retry.className = "badge__retry";
    retry.textContent = "↻";
    retry.title = "Retry";
    retry.addEventListener("click", (event) => {
      event.stopPropagation();
      onRetry();
    });
    badge.appendChild(retry);
  }
  return badge;
}
