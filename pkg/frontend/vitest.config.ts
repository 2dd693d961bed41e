import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      // The tests drive a live engine on another loopback port; the DOM's
      // same-origin policy would block that. The app itself never needs
      // this: it is served by the engine and talks to its own origin.
      happyDOM: {
        settings: { fetch: { disableSameOriginPolicy: true } },
      },
    },
    fileParallelism: false,
    globalSetup: "./tests/globalSetup.ts",
    setupFiles: ["./tests/setup.ts"],
    testTimeout: 30_000,
    hookTimeout: 120_000,
  },
});
