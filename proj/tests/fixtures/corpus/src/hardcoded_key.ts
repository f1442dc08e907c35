// Bootstrap credentials for the staging relay.

export const channelConfig = {
  host: "relay.staging.internal",
  apiSecret: "9f8d7c6b5a4e3d2c1b0a9f8e7d6c5b4a3e2d1c0b",
};
