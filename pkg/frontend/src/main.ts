import { App } from "./app";
import { DEFAULT_CONFIG } from "./config";

declare global {
  interface Window {
    MEDIALENS_BASE_URL?: string;
  }
}

const root = document.getElementById("app");
if (root) {
  const cfg = { ...DEFAULT_CONFIG, baseUrl: window.MEDIALENS_BASE_URL ?? "" };
  void new App(root, cfg).boot();
}
