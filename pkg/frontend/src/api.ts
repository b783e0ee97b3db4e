// Typed client for the platform's HTTP wire contract (see docs/api.md in the
// repository root). The UI talks to the server exclusively through this file.

export interface MediaView {
  id: string;
  kind: "video" | "image" | "audio";
  duration_ms: number | null;
}

export interface EntryView {
  id: string;
  language: "GSL" | "ESL";
  lemma: string;
  letter_group: string;
  gloss: string | null;
  sign_video: MediaView;
  pronunciation_audio: MediaView | null;
}

export interface AlphabetLetter {
  letter: string;
  glyph_image: string | null;
}

export interface AlphabetView {
  language: string;
  letters: AlphabetLetter[];
}

export interface SignListView {
  language: string;
  letter: string;
  entries: EntryView[];
}

export interface TranslationsView {
  entry: EntryView;
  translations: EntryView[];
}

export interface ExerciseSummary {
  id: string;
  language: "GSL" | "ESL";
  kind: string;
  item_count: number;
}

export interface IdImage {
  id: number;
  image: string;
}

export interface OptionView {
  id: number;
  text: string;
}

export interface CheckpointView {
  id: number;
  at_ms: number;
  options: OptionView[];
}

// Play view: kind-specific fields are optional; the task components read the
// ones for their kind. Content arrives in display order; ids are the original
// indices that submissions refer to.
export interface ExercisePlayView extends ExerciseSummary {
  presentation: { target: string; order: number[] };
  items?: Array<IdImage & { letter?: string }>;
  left?: Array<{ id: number; letter: string }>;
  right?: IdImage[];
  video?: MediaView;
  options?: OptionView[];
  letters?: Array<{ id: number; letter_image: string }>;
  pictures?: IdImage[];
  prompt_videos?: MediaView[];
  min_length_chars?: number;
  deck_size?: number;
  pair_count?: number;
  checkpoints?: CheckpointView[];
}

export interface GlyphView {
  language: string;
  letter: string;
  image: string;
}

export interface StateView {
  session_id: string;
  exercise_id: string;
  kind: string;
  open: boolean;
  revealed: boolean;
  elapsed_ms: number;
  arrangement?: number[];
  move_count?: number;
  deck_size?: number;
  face_up?: number[];
  matched?: number[];
  turn_count?: number;
  revealed_cards?: Record<string, GlyphView>;
  complete?: boolean;
}

export interface FlipResult {
  card: number;
  side: string;
  matched: boolean | null;
  pair?: number[];
  hidden: number[];
  glyphs?: Record<string, GlyphView>;
}

export interface EventResponse {
  state: StateView;
  result?: { solution?: SolutionView } & Partial<FlipResult>;
}

export interface SolutionView {
  letters?: string[];
  mapping?: number[];
  arrangement?: number[];
  option?: number;
  text?: string;
  pairs?: Array<{ gsl: string; esl: string }>;
  checkpoints?: Array<{ option: number; text: string }>;
}

export interface SessionCreated {
  session_id: string;
  seed: number;
  exercise: ExercisePlayView;
  state: StateView;
}

export interface ResultsSummary {
  correct_count: number;
  total: number;
  percentage: number;
  elapsed_ms: number;
  revealed: boolean;
  moves_or_turns: number | null;
  story_text: string | null;
  per_item: Array<"correct" | "incorrect" | "ungraded">;
}

export interface SubmitBody {
  kind?: string;
  answers?: (string | null)[];
  mapping?: Record<number, number>;
  arrangement?: number[];
  option?: number;
  checkpoint_answers?: (number | null)[];
  story?: string;
}

export interface LocaleListing {
  available: string[];
  default: string | null;
}

export interface LocaleCatalog {
  locale: string;
  strings: Record<string, string>;
  fallback_keys: string[];
}

export type SessionEventBody =
  | { type: "flip"; card: number }
  | { type: "move"; from: number; to: number }
  | { type: "reveal" };

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
    public details?: unknown,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(private base: string = "") {}

  mediaUrl(mediaId: string): string {
    return `${this.base}/api/media/${encodeURIComponent(mediaId)}`;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path, init);
    } catch (cause) {
      throw new ApiError("network_error", `cannot reach the server (${cause})`, 0);
    }
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      // tolerated: error paths below synthesize an envelope
    }
    if (!response.ok) {
      const envelope = (body as { error?: { code?: string; message?: string; details?: unknown } })?.error;
      throw new ApiError(
        envelope?.code ?? "http_error",
        envelope?.message ?? `request failed with status ${response.status}`,
        response.status,
        envelope?.details,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  alphabet(language: string): Promise<AlphabetView> {
    return this.request(`/api/alphabet/${language}`);
  }

  signs(language: string, letter: string): Promise<SignListView> {
    return this.request(`/api/signs/${language}/${encodeURIComponent(letter)}`);
  }

  entry(entryId: string): Promise<EntryView> {
    return this.request(`/api/entries/${encodeURIComponent(entryId)}`);
  }

  translations(entryId: string): Promise<TranslationsView> {
    return this.request(`/api/entries/${encodeURIComponent(entryId)}/translations`);
  }

  exercises(filter?: { kind?: string; language?: string }): Promise<{ exercises: ExerciseSummary[] }> {
    const params = new URLSearchParams();
    if (filter?.kind) params.set("kind", filter.kind);
    if (filter?.language) params.set("language", filter.language);
    const query = params.toString();
    return this.request(`/api/exercises${query ? "?" + query : ""}`);
  }

  createSession(exerciseId: string, seed?: number): Promise<SessionCreated> {
    return this.post("/api/sessions", { exercise_id: exerciseId, seed: seed ?? null });
  }

  sendEvent(sessionId: string, event: SessionEventBody): Promise<EventResponse> {
    return this.post(`/api/sessions/${sessionId}/events`, event);
  }

  submit(sessionId: string, body: SubmitBody): Promise<ResultsSummary> {
    return this.post(`/api/sessions/${sessionId}/submit`, body);
  }

  results(sessionId: string): Promise<ResultsSummary> {
    return this.request(`/api/sessions/${sessionId}/results`);
  }

  locales(): Promise<LocaleListing> {
    return this.request("/api/locales");
  }

  locale(code: string): Promise<LocaleCatalog> {
    return this.request(`/api/locales/${encodeURIComponent(code)}`);
  }

  contact(message: string, name?: string, email?: string): Promise<{ id: string; stored: boolean }> {
    return this.post("/api/contact", { message, name: name || null, email: email || null });
  }
}
