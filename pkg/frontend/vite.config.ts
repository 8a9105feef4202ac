import { defineConfig } from "vitest/config";

export default defineConfig({
  // In dev the API origin comes from the proxy below; the production build is
  // served by `charter-deps serve --static frontend/dist`, same origin as /v1.
  server: {
    proxy: {
      "/v1": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "jsdom",
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
