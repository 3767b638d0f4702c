import type { ApiClient } from "./api.js";
import { CRITERIA, type Criterion, type UserModel } from "./types.js";

const LITERACY_LEVELS = ["novice", "intermediate", "expert"] as const;
const SENSITIVITY_LEVELS = ["low", "normal", "high"] as const;

const LABELS: Record<Criterion, string> = {
  text_similarity: "Text Similarity",
  tone: "Tone",
  writing_quality: "Writing Quality",
  image_reuse: "Image Reuse",
  image_manipulation: "Image Manipulation",
  video_reuse: "Video Reuse",
  video_manipulation: "Video Manipulation",
};

/** Editable user-model form; successful saves invoke onSaved so the feed
 * can re-render with the new preferences. Validation errors from the
 * service surface inline. */
export class SettingsView {
  constructor(
    private readonly api: ApiClient,
    private readonly container: HTMLElement,
    private readonly userId: string,
    private readonly onSaved: (model: UserModel) => void,
  ) {}

  async render(): Promise<void> {
    const model = await this.api.getUser(this.userId);
    this.container.textContent = "";

    const form = document.createElement("form");
    form.className = "settings";

    const literacyRow = document.createElement("label");
    literacyRow.className = "settings__row";
    literacyRow.textContent = "Explanation depth (digital literacy): ";
    const literacy = document.createElement("select");
    literacy.name = "digital_literacy";
    for (const level of LITERACY_LEVELS) {
      const option = document.createElement("option");
      option.value = level;
      option.textContent = level;
      option.selected = model.digital_literacy === level;
      literacy.appendChild(option);
    }
    literacyRow.appendChild(literacy);
    form.appendChild(literacyRow);

    const interestsRow = document.createElement("label");
    interestsRow.className = "settings__row";
    interestsRow.textContent = "Interests (comma separated): ";
    const interests = document.createElement("input");
    interests.name = "interests";
    interests.value = model.interests.join(", ");
    interestsRow.appendChild(interests);
    form.appendChild(interestsRow);

    for (const criterion of CRITERIA) {
      const pref = model.warning_prefs[criterion];
      const row = document.createElement("div");
      row.className = "settings__row settings__criterion";
      row.setAttribute("data-criterion", criterion);

      const enabled = document.createElement("input");
      enabled.type = "checkbox";
      enabled.name = `${criterion}.enabled`;
      enabled.checked = pref.enabled;
      row.appendChild(enabled);

      const label = document.createElement("span");
      label.textContent = ` ${LABELS[criterion]} warnings, sensitivity: `;
      row.appendChild(label);

      const sensitivity = document.createElement("select");
      sensitivity.name = `${criterion}.sensitivity`;
      for (const level of SENSITIVITY_LEVELS) {
        const option = document.createElement("option");
        option.value = level;
        option.textContent = level;
        option.selected = pref.sensitivity === level;
        sensitivity.appendChild(option);
      }
      row.appendChild(sensitivity);
      form.appendChild(row);
    }

    const error = document.createElement("p");
    error.className = "form-error";
    error.hidden = true;
    form.appendChild(error);

    const save = document.createElement("button");
    save.type = "submit";
    save.textContent = "Save settings";
    form.appendChild(save);

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.save(form, error);
    });
    this.container.appendChild(form);
  }

  private collectPatch(form: HTMLFormElement): object {
    const literacy = (form.elements.namedItem("digital_literacy") as HTMLSelectElement).value;
    const interestsRaw = (form.elements.namedItem("interests") as HTMLInputElement).value;
    const warning_prefs: Record<string, { enabled: boolean; sensitivity: string }> = {};
    for (const criterion of CRITERIA) {
      const enabled = form.elements.namedItem(`${criterion}.enabled`) as HTMLInputElement;
      const sensitivity = form.elements.namedItem(`${criterion}.sensitivity`) as HTMLSelectElement;
      warning_prefs[criterion] = {
        enabled: enabled.checked,
        sensitivity: sensitivity.value,
      };
    }
    return {
      digital_literacy: literacy,
      interests: interestsRaw
        .split(",")
        .map((s) => s.trim())
        .filter((s) => s.length > 0),
      warning_prefs,
    };
  }

  private async save(form: HTMLFormElement, error: HTMLParagraphElement): Promise<void> {
    error.hidden = true;
    try {
      const model = await this.api.patchUser(this.userId, this.collectPatch(form));
      this.onSaved(model);
    } catch (exc) {
      error.textContent = exc instanceof Error ? exc.message : String(exc);
      error.hidden = false;
    }
  }
}
