// Wire types mirrored from the verification service. The UI is a pure
// projection of these responses: nothing is re-scored client side.

export const CRITERIA = [
  "text_similarity",
  "tone",
  "writing_quality",
  "image_reuse",
  "image_manipulation",
  "video_reuse",
  "video_manipulation",
] as const;

export type Criterion = (typeof CRITERIA)[number];

export type BadgeState = "blue_ok" | "red_caution" | "grey_unknown";
export type IconState = "green_pass" | "red_caution" | "grey_unavailable";

export interface Icon {
  state: IconState;
  short_label: string;
  summary_text: string;
  detail_text: string;
}

export interface Presentation {
  badge: BadgeState;
  icons: Record<Criterion, Icon>;
}

export interface PresentationResponse {
  schema_version: string;
  generated_at: string;
  url: string;
  user_id: string;
  presentation: Presentation;
}

export interface WarningPref {
  enabled: boolean;
  sensitivity: "low" | "normal" | "high";
}

export interface UserModel {
  user_id: string;
  interests: string[];
  domain_knowledge: Record<string, string>;
  digital_literacy: "novice" | "intermediate" | "expert";
  warning_prefs: Record<Criterion, WarningPref>;
}

export interface FeedPost {
  post_id: string;
  url: string;
  title: string;
  publisher: string;
  snippet: string;
  thumbnail_ref: string | null;
}
