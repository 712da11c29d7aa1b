/** Single configuration knob: the gateway base URL. */

declare global {
  // Optional page-level override: <script>window.STRATAGEM_BASE_URL = "..."</script>
  interface Window {
    STRATAGEM_BASE_URL?: string;
  }
}

const DEFAULT_BASE_URL = "http://127.0.0.1:8000";

let baseUrl: string | null = null;

export function apiBase(): string {
  if (baseUrl !== null) return baseUrl;
  if (typeof window !== "undefined" && window.STRATAGEM_BASE_URL) {
    return window.STRATAGEM_BASE_URL;
  }
  return DEFAULT_BASE_URL;
}

export function setApiBase(url: string): void {
  baseUrl = url.replace(/\/+$/, "");
}
