// The single formatter between response values and the screen. Every number
// shown in the UI goes through fmt() applied to a raw response value, never
// to anything computed client-side; tests compare DOM text against fmt() of
// the intercepted response bytes.

export function fmt(value: number | string | null): string {
  if (value === null) return "-";
  if (typeof value === "string") return value;
  return String(value);
}
