/** Trailing-edge debounce so a burst of keystrokes costs one request. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
): ((...args: A) => void) & { cancel: () => void; flush: () => void } {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: A | null = null;

  const debounced = (...args: A) => {
    pending = args;
    if (timer) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      const args = pending as A;
      pending = null;
      fn(...args);
    }, delayMs);
  };

  debounced.cancel = () => {
    if (timer) clearTimeout(timer);
    timer = null;
    pending = null;
  };

  // run a pending call now instead of waiting out the delay
  debounced.flush = () => {
    if (timer === null || pending === null) return;
    clearTimeout(timer);
    timer = null;
    const args = pending;
    pending = null;
    fn(...args);
  };

  return debounced;
}
