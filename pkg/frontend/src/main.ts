import { ApiClient } from "./api.js";
import { FeedView, loadFeedFixture } from "./feed.js";
import { SettingsView } from "./settings.js";

// Feed simulator entry point. The API base and user id come from query
// parameters, e.g. ?api=http://127.0.0.1:8420&user=mary

function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

async function start(): Promise<void> {
  const api = new ApiClient(param("api", "http://127.0.0.1:8420"));
  const userId = param("user", "demo-user");

  const feedContainer = document.getElementById("feed");
  const settingsContainer = document.getElementById("settings");
  const tabFeed = document.getElementById("tab-feed");
  const tabSettings = document.getElementById("tab-settings");
  if (!feedContainer || !settingsContainer || !tabFeed || !tabSettings) {
    throw new Error("page skeleton missing");
  }

  const feed = new FeedView(api, feedContainer, userId);
  const settings = new SettingsView(api, settingsContainer, userId, () => {
    // re-render badges with the updated preferences, no fixture reload
    void feed.refresh();
  });

  tabFeed.addEventListener("click", () => {
    feedContainer.hidden = false;
    settingsContainer.hidden = true;
  });
  tabSettings.addEventListener("click", () => {
    feedContainer.hidden = true;
    settingsContainer.hidden = false;
  });

  const posts = await loadFeedFixture("./feed.json");
  await Promise.all([feed.render(posts), settings.render()]);
}

void start();
