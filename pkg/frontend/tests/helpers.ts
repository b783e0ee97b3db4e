// Shared scaffolding for component tests: a route-based fetch stub and
// canned wire-format payloads matching the documented API.

import { vi } from "vitest";
import {
  ApiClient,
  ExercisePlayView,
  ResultsSummary,
  SessionCreated,
  StateView,
} from "../src/api.js";
import { TaskContext } from "../src/tasks/common.js";

export type RouteHandler = (init: RequestInit | undefined, url: string) => unknown;

export interface FetchLogEntry {
  url: string;
  method: string;
  body: unknown;
}

export function mockFetch(routes: Record<string, RouteHandler>): FetchLogEntry[] {
  const log: FetchLogEntry[] = [];
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string, init?: RequestInit) => {
      const method = init?.method ?? "GET";
      const body = init?.body ? JSON.parse(String(init.body)) : undefined;
      log.push({ url, method, body });
      const key = `${method} ${url.split("?")[0]}`;
      const handler = routes[key];
      if (!handler) {
        return new Response(
          JSON.stringify({ error: { code: "unknown_entity", message: `no stub for ${key}` } }),
          { status: 404, headers: { "Content-Type": "application/json" } },
        );
      }
      const result = handler(init, url);
      if (result instanceof Response) return result;
      return new Response(JSON.stringify(result), {
        status: 200,
        headers: { "Content-Type": "application/json" },
      });
    }),
  );
  return log;
}

export function errorResponse(status: number, code: string, message = "nope"): Response {
  return new Response(JSON.stringify({ error: { code, message } }), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function summaryFixture(overrides: Partial<ResultsSummary> = {}): ResultsSummary {
  return {
    correct_count: 6,
    total: 8,
    percentage: 75.0,
    elapsed_ms: 12_340,
    revealed: false,
    moves_or_turns: null,
    story_text: null,
    per_item: [],
    ...overrides,
  };
}

export function sessionFixture(
  exercise: Partial<ExercisePlayView> & Pick<ExercisePlayView, "id" | "kind">,
  state: Partial<StateView> = {},
): SessionCreated {
  return {
    session_id: "sess-1",
    seed: 7,
    exercise: {
      language: "GSL",
      item_count: 0,
      presentation: { target: "items", order: [] },
      ...exercise,
    } as ExercisePlayView,
    state: {
      session_id: "sess-1",
      exercise_id: exercise.id,
      kind: exercise.kind,
      open: true,
      revealed: false,
      elapsed_ms: 0,
      ...state,
    },
  };
}

export function taskContext(
  session: SessionCreated,
  onFinish: TaskContext["onFinish"] = () => {},
): TaskContext {
  return {
    api: new ApiClient(""),
    t: (key) => key,
    session,
    onFinish,
  };
}

export function flushPromises(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
