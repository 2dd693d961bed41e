/** Wire types of the local engine API. */
export const emptySelection = () => ({
    datasets: [],
    categories: [],
    query: null,
    timeRange: null,
});
