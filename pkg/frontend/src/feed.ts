import type { ApiClient } from "./api.js";
import { renderBadge } from "./badge.js";
import { renderIconPane } from "./pane.js";
import type { FeedPost, Presentation } from "./types.js";

// Each post tracks a fetch version; responses arriving for an older
// version are discarded so a stale presentation can never overwrite a
// newer one.

interface PostState {
  post: FeedPost;
  version: number;
  presentation: Presentation | null;
}

export class FeedView {
  private readonly states = new Map<string, PostState>();

  constructor(
    private readonly api: ApiClient,
    private readonly container: HTMLElement,
    private userId: string,
  ) {}

  setUser(userId: string): void {
    this.userId = userId;
  }

  async render(posts: FeedPost[]): Promise<void> {
    this.container.textContent = "";
    const loads: Promise<void>[] = [];
    for (const post of posts) {
      const state: PostState = {
        post,
        version: (this.states.get(post.post_id)?.version ?? 0) + 1,
        presentation: null,
      };
      this.states.set(post.post_id, state);
      this.container.appendChild(this.renderPost(state));
      loads.push(this.loadPresentation(post.post_id, state.version));
    }
    await Promise.all(loads);
  }

  /** Re-fetch every post's presentation (e.g. after settings changed). */
  async refresh(): Promise<void> {
    const loads: Promise<void>[] = [];
    for (const state of this.states.values()) {
      state.version += 1;
      loads.push(this.loadPresentation(state.post.post_id, state.version));
    }
    await Promise.all(loads);
  }

  private async loadPresentation(postId: string, version: number): Promise<void> {
    const state = this.states.get(postId);
    if (!state) return;
    let presentation: Presentation | null = null;
    try {
      presentation = await this.api.getPresentation(state.post.url, this.userId);
    } catch {
      presentation = null; // unreachable service renders as grey with retry
    }
    const current = this.states.get(postId);
    if (!current || current.version !== version) {
      return; // stale response, discard
    }
    current.presentation = presentation;
    this.updatePost(current);
  }

  private renderPost(state: PostState): HTMLElement {
    const card = document.createElement("article");
    card.className = "post";
    card.setAttribute("data-post-id", state.post.post_id);

    const header = document.createElement("header");
    header.className = "post__header";
    const publisher = document.createElement("span");
    publisher.className = "post__publisher";
    publisher.textContent = state.post.publisher;
    header.appendChild(publisher);

    const badgeSlot = document.createElement("span");
    badgeSlot.className = "post__badge-slot";
    header.appendChild(badgeSlot);
    card.appendChild(header);

    const title = document.createElement("h2");
    title.className = "post__title";
    title.textContent = state.post.title;
    card.appendChild(title);

    if (state.post.thumbnail_ref) {
      const thumb = document.createElement("div");
      thumb.className = "post__thumb";
      thumb.textContent = `[media: ${state.post.thumbnail_ref}]`;
      card.appendChild(thumb);
    }

    const snippet = document.createElement("p");
    snippet.className = "post__snippet";
    snippet.textContent = state.post.snippet;
    card.appendChild(snippet);

    const paneSlot = document.createElement("div");
    paneSlot.className = "post__pane-slot";
    card.appendChild(paneSlot);

    this.mountBadge(state, badgeSlot, paneSlot);
    return card;
  }

  private updatePost(state: PostState): void {
    const card = this.container.querySelector(`[data-post-id="${state.post.post_id}"]`);
    if (!card) return;
    const badgeSlot = card.querySelector<HTMLElement>(".post__badge-slot");
    const paneSlot = card.querySelector<HTMLElement>(".post__pane-slot");
    if (badgeSlot && paneSlot) {
      this.mountBadge(state, badgeSlot, paneSlot);
    }
  }

  private mountBadge(state: PostState, badgeSlot: HTMLElement, paneSlot: HTMLElement): void {
    badgeSlot.textContent = "";
    paneSlot.textContent = "";
    const badgeState = state.presentation?.badge ?? "grey_unknown";
    const badge = renderBadge(badgeState, () => {
      state.version += 1;
      void this.loadPresentation(state.post.post_id, state.version);
    });
    badge.addEventListener("click", () => {
      if (!state.presentation) return;
      if (paneSlot.childElementCount > 0) {
        paneSlot.textContent = ""; // collapse
      } else {
        paneSlot.appendChild(renderIconPane(state.presentation));
      }
    });
    badgeSlot.appendChild(badge);
  }
}

export async function loadFeedFixture(url: string): Promise<FeedPost[]> {
  const response = await fetch(url);
  if (!response.ok) {
    throw new Error(`feed fixture unavailable: ${response.status}`);
  }
  return (await response.json()) as FeedPost[];
}
