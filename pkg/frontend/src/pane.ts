import { CRITERIA, type Criterion, type Icon, type Presentation } from "./types.js";

const ICON_CLASS: Record<Icon["state"], string> = {
  green_pass: "icon--green",
  red_caution: "icon--red",
  grey_unavailable: "icon--grey",
};

const ICON_SYMBOL: Record<Icon["state"], string> = {
  green_pass: "✓",
  red_caution: "!",
  grey_unavailable: "–",
};

function renderIcon(criterion: Criterion, icon: Icon): HTMLElement {
  const cell = document.createElement("div");
  cell.className = `icon ${ICON_CLASS[icon.state]}`;
  cell.setAttribute("data-criterion", criterion);
  cell.setAttribute("data-icon-state", icon.state);

  const symbol = document.createElement("span");
  symbol.className = "icon__symbol";
  symbol.textContent = ICON_SYMBOL[icon.state];
  cell.appendChild(symbol);

  const label = document.createElement("span");
  label.className = "icon__label";
  label.textContent = icon.short_label;
  cell.appendChild(label);

  const expander = document.createElement("button");
  expander.type = "button";
  expander.className = "icon__expander";
  expander.textContent = "▾";
  expander.title = `More about ${icon.short_label}`;
  cell.appendChild(expander);

  const detail = document.createElement("div");
  detail.className = "detail-pane";
  detail.hidden = true;
  const summary = document.createElement("p");
  summary.className = "detail-pane__summary";
  summary.textContent = icon.summary_text;
  detail.appendChild(summary);
  const text = document.createElement("pre");
  text.className = "detail-pane__text";
  text.textContent = icon.detail_text; // verbatim from the companion service
  detail.appendChild(text);
  cell.appendChild(detail);

  expander.addEventListener("click", (event) => {
    event.stopPropagation();
    detail.hidden = !detail.hidden;
    expander.textContent = detail.hidden ? "▾" : "▴";
  });
  return cell;
}

/** The seven-icon explanation pane shown beneath an expanded badge. */
export function renderIconPane(presentation: Presentation): HTMLElement {
  const pane = document.createElement("div");
  pane.className = "icon-pane";
  for (const criterion of CRITERIA) {
    pane.appendChild(renderIcon(criterion, presentation.icons[criterion]));
  }
  return pane;
}
