import type { Presentation, PresentationResponse, UserModel } from "./types.js";

/** Thin client for the verification service REST API. */
export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  async getPresentation(url: string, userId: string): Promise<Presentation> {
    const endpoint =
      `${this.baseUrl}/api/v1/presentation?url=${encodeURIComponent(url)}` +
      `&user=${encodeURIComponent(userId)}`;
    const response = await fetch(endpoint);
    if (!response.ok) {
      throw new Error(`presentation request failed: ${response.status}`);
    }
    const payload = (await response.json()) as PresentationResponse;
    return payload.presentation;
  }

  async getUser(userId: string): Promise<UserModel> {
    const response = await fetch(`${this.baseUrl}/api/v1/users/${encodeURIComponent(userId)}`);
    if (!response.ok) {
      throw new Error(`user request failed: ${response.status}`);
    }
    return (await response.json()) as UserModel;
  }

  /** PATCH a partial user model; throws with the server's message on 400. */
  async patchUser(userId: string, patch: object): Promise<UserModel> {
    const response = await fetch(`${this.baseUrl}/api/v1/users/${encodeURIComponent(userId)}`, {
      method: "PATCH",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(patch),
    });
    if (!response.ok) {
      let message = `update failed: ${response.status}`;
      try {
        const body = (await response.json()) as { error?: string };
        if (body.error) message = body.error;
      } catch {
        // keep the status-based message
      }
      throw new Error(message);
    }
    return (await response.json()) as UserModel;
  }
}
